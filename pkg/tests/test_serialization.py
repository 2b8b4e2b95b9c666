import json

import pytest

from shiftppt.generator import sample_ppt, sample_random
from shiftppt.serialization import (
    ParamsFormatError,
    corpus_lines,
    dumps,
    params_from_dict,
    params_to_dict,
    parse_instances,
)
from shiftppt.states import GeneralShiftParams


def test_dumps_seventeen_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps({"a": [1, 2.5, True, None, "x"]}) == '{"a": [1, 2.5, true, null, "x"]}'
    assert dumps(float("nan")) == "null"


def test_params_round_trip_is_exact():
    for p in (sample_random(1), sample_ppt(2, True)):
        text = dumps(params_to_dict(p))
        assert params_from_dict(json.loads(text)) == p


def test_general_round_trip():
    g = GeneralShiftParams(5, (0.2,) * 5, (((5**-0.5),) * 5,) * 5)
    assert params_from_dict(json.loads(dumps(params_to_dict(g)))) == g


@pytest.mark.parametrize(
    "obj, field",
    [
        ([], "<root>"),
        ({"X": []}, "lambda"),
        ({"lambda": [0.5, 0.5]}, "lambda"),
        ({"lambda": [0.5, 0.3, 0.2]}, "X"),
        ({"lambda": [0.5, 0.3, "0.2"], "X": [], "Xp": [], "Xpp": []}, "lambda[2]"),
        ({"lambda": [0.4, 0.3, 0.2], "X": [[1, 0]] * 3, "Xp": [[1, 0]] * 3, "Xpp": [[1, 0]] * 3}, "lambda"),
        ({"lambda": [0.5, 0.3, 0.2], "X": [[1, 0]] * 3, "Xp": [[1, 0]] * 3, "Xpp": [[1, 0]] * 3}, "X"),
        ({"d": 4, "lambda": [0.25] * 4, "amps": []}, "d"),
    ],
)
def test_params_errors_name_field(obj, field):
    with pytest.raises(ParamsFormatError) as info:
        params_from_dict(obj)
    assert info.value.field == field


def test_corpus_parsing_skips_header():
    ps = [sample_random(s) for s in range(3)]
    lines = corpus_lines(ps, 0, "random")
    head = json.loads(lines[0])
    assert head == {"seed": 0, "mode": "random", "version": 1, "count": 3}
    docs = parse_instances("\n".join(lines))
    assert [params_from_dict(d) for d in docs] == ps


def test_parse_errors():
    with pytest.raises(ParamsFormatError):
        parse_instances("   ")
    with pytest.raises(ParamsFormatError, match="line 2"):
        parse_instances('{"mode": "x"}\n{not json')
