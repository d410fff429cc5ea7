"""JSON encodings round-trip exactly and reject anything inexact."""

import json
from fractions import Fraction

import pytest

from pentads.catalog import catalog, resolve
from pentads.exact_linalg import Matrix
from pentads.lie import NotClosedError, family, trace_form
from pentads.pentad import Representation, StandardPentad, dual_representation
from pentads.preh import decide_regularity
from pentads.serialize import (
    SerializationError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
    pentad_from_json,
    pentad_to_json,
    scalar_from_json,
    vector_from_json,
    vector_to_json,
    verdict_from_json,
    verdict_to_json,
)

ENTRY_NAMES = [e.display_name for e in catalog()]


def reload(obj):
    """Push a JSON-ready dict through actual text and back."""
    return json.loads(dumps(obj))


class TestScalars:
    def test_accepts_strings_and_ints(self):
        assert scalar_from_json("3/4") == Fraction(3, 4)
        assert scalar_from_json("-7") == -7
        assert scalar_from_json(5) == 5

    @pytest.mark.parametrize("bad", [1.5, True, None, [1], "3/0", "x", ""])
    def test_rejects_inexact_or_malformed(self, bad):
        with pytest.raises(SerializationError):
            scalar_from_json(bad)

    def test_vector_round_trip(self):
        v = (Fraction(1, 3), -2, 0)
        assert vector_from_json(vector_to_json(v)) == v

    def test_vector_must_be_array(self):
        with pytest.raises(SerializationError):
            vector_from_json("1,2")


class TestMatrices:
    def test_round_trip(self):
        m = Matrix.from_rows([[1, Fraction(-1, 2)], [0, 3]])
        assert matrix_from_json(reload(matrix_to_json(m))) == m

    @pytest.mark.parametrize("bad", [[], [[1], [2, 3]], [["1"], "x"], "nope"])
    def test_rejects_non_rectangular(self, bad):
        with pytest.raises(SerializationError):
            matrix_from_json(bad)


class TestAlgebraFiles:
    def test_round_trip(self):
        alg = family("gl", 2)
        assert algebra_from_json(reload(algebra_to_json(alg))) == alg

    def test_missing_key(self):
        with pytest.raises(SerializationError, match="missing keys: basis"):
            algebra_from_json({"ambient_size": 2})

    def test_unknown_key(self):
        with pytest.raises(SerializationError, match="unknown keys"):
            algebra_from_json({"ambient_size": 1, "basis": [[["1"]]],
                               "extra": 1})

    def test_bad_size(self):
        with pytest.raises(SerializationError, match="positive integer"):
            algebra_from_json({"ambient_size": 0, "basis": [[["1"]]]})

    def test_closure_still_enforced(self):
        # A single nilpotent generator brackets to zero with itself, so this
        # one passes; two that do not close must still be rejected.
        e = [["0", "1"], ["0", "0"]]
        f = [["0", "0"], ["1", "0"]]
        with pytest.raises(NotClosedError):
            algebra_from_json({"ambient_size": 2, "basis": [e, f]})


class TestPentadFiles:
    @pytest.mark.parametrize("name", ENTRY_NAMES)
    def test_round_trip_is_identity(self, name):
        p = resolve(name).build()
        assert pentad_from_json(reload(pentad_to_json(p))) == p

    def test_defaults_fill_in(self):
        # Omitting dual_action, pairing, and form must give the
        # contragredient action, the identity pairing, and the trace form.
        p = resolve("gl2_trace").build()
        obj = pentad_to_json(p)
        minimal = {"algebra": obj["algebra"], "action": obj["action"]}
        assert pentad_from_json(reload(minimal)) == p

    def test_unknown_key_rejected(self):
        obj = pentad_to_json(resolve("gl1_scalar").build())
        obj["extra"] = []
        with pytest.raises(SerializationError, match="unknown keys: extra"):
            pentad_from_json(obj)

    def test_action_must_be_array(self):
        obj = pentad_to_json(resolve("gl1_scalar").build())
        obj["action"] = "nope"
        with pytest.raises(SerializationError, match="array of matrices"):
            pentad_from_json(obj)

    def test_missing_algebra(self):
        with pytest.raises(SerializationError, match="missing keys: algebra"):
            pentad_from_json({"action": []})


class TestCertificates:
    @pytest.mark.parametrize("name", ENTRY_NAMES)
    def test_round_trip_is_identity(self, name):
        p = resolve(name).build()
        v = decide_regularity(p)
        assert verdict_from_json(reload(verdict_to_json(v, p))) == v

    def test_inconclusive_round_trip(self):
        alg = family("gl", 1)
        rep = Representation(alg, (Matrix.identity(5),))
        p = StandardPentad(alg, rep, dual_representation(rep),
                           trace_form(alg))
        v = decide_regularity(p)
        assert v.outcome == "Inconclusive"
        assert verdict_from_json(reload(verdict_to_json(v, p))) == v

    def test_required_keys_present(self):
        p = resolve("gl1_scalar").build()
        doc = verdict_to_json(decide_regularity(p), p)
        assert {"outcome", "H0", "X", "Y", "ranks", "witness",
                "seed", "form"} <= set(doc)

    def test_form_descriptor(self):
        trace = resolve("gl2_trace").build()
        scaled = resolve("gl2_standard").build()
        assert verdict_to_json(decide_regularity(trace), trace)["form"] == "trace"
        form = verdict_to_json(decide_regularity(scaled), scaled)["form"]
        assert form == matrix_to_json(scaled.form.gram)

    def test_witness_vector_restored_as_tuple(self):
        p = resolve("matrix_space_example(2)").build()
        v = decide_regularity(p)
        back = verdict_from_json(reload(verdict_to_json(v, p)))
        assert back.witness["vector"] == v.witness["vector"]
        assert isinstance(back.witness["vector"], tuple)

    def test_bad_certificate_shape(self):
        with pytest.raises(SerializationError, match="missing keys"):
            verdict_from_json({"outcome": "Regular"})


class TestDumps:
    def test_sorted_and_stable(self):
        obj = {"b": 1, "a": [{"z": "1/2", "y": 0}]}
        text = dumps(obj)
        assert text.index('"a"') < text.index('"b"')
        assert dumps(json.loads(text)) == text
