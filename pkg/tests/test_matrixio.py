#
# MIT License
#
# (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
# Permission is hereby granted, free of charge, to any person obtaining a
# copy of this software and associated documentation files (the "Software"),
# to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense,
# and/or sell copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included
# in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
# OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
# ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
import json

import numpy as np
import pytest

import lib.errors as errors
import lib.forge as forge
import lib.maps as maps
import lib.matrixio as matrixio

from lib.forge import SumRelation


def scalar(x):
    return {"dim": 1, "re": [[x]]}


WORKED = {"m": 1, "M": 3, "A": scalar(0), "B": scalar(2), "C": scalar(2), "D": scalar(5)}


class TestInstanceFiles:

    def test_quadruple_kind_is_inferred(self):
        inst = matrixio.instance_from_json(WORKED)
        assert isinstance(inst, forge.QuadrupleInstance)
        assert inst.relation is SumRelation.EqualSum
        assert (inst.m, inst.M) == (1.0, 3.0)

    def test_midpoint(self):
        inst = matrixio.instance_from_json({"m": 1, "M": 3, "A": scalar(0), "D": scalar(4)})
        assert isinstance(inst, forge.MidpointInstance)
        np.testing.assert_allclose(inst.midpoint.entries, [[2.0]])

    def test_mercer_with_family_spec(self):
        obj = {"m": 1, "M": 3, "B_list": [scalar(2), scalar(1.5)], "family": "family:n=2", "seed": 4}
        inst = matrixio.instance_from_json(obj)
        assert len(inst.family) == 2

    def test_complex_entries(self):
        obj = {"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 1], [-1, 0]]}
        A = matrixio.matrix_from_json(obj)
        assert A.entries[0, 1] == 1j
        assert matrixio.matrix_to_json(A)["im"] == [[0.0, 1.0], [-1.0, 0.0]]

    @pytest.mark.parametrize("obj", [
        [],
        {"M": 3, "A": scalar(0), "D": scalar(4)},
        {"m": 1, "M": 3, "A": {"dim": 2, "re": [[1]]}, "D": scalar(4)},
        {"m": 1, "M": 3, "A": scalar(0), "B": scalar(2), "C": scalar(2), "D": scalar(4), "relation": "Sideways"},
        {"m": 1, "M": 3, "kind": "triple"},
        {"m": 1, "M": 3, "B_list": [scalar(2)], "family": "mixed:count=2"},
    ])
    def test_rejects(self, obj):
        with pytest.raises(errors.InstanceFormatError):
            matrixio.instance_from_json(obj)

    def test_non_hermitian(self):
        with pytest.raises(errors.NotHermitian):
            matrixio.matrix_from_json({"dim": 2, "re": [[1, 2], [0, 1]]})

    def test_read_write(self, tmp_path):
        inst = forge.sample_quadruple(2, 1.0, 3.0, seed=1)
        phi = maps.sample_map("compression", 2, 1, k=1)
        path = str(tmp_path / "instance.json")
        matrixio.write_instance(path, inst, phi)
        back, back_phi = matrixio.read_instance(path)
        np.testing.assert_allclose(back.D.entries, inst.D.entries, rtol=0, atol=0)
        np.testing.assert_allclose(back_phi.V, phi.V, rtol=0, atol=0)
        assert matrixio.instance_digest(back) == matrixio.instance_digest(inst)

    def test_read_garbage(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(errors.InstanceFormatError):
            matrixio.read_instance(str(path))


class TestReports:

    def test_dumps_is_stable(self):
        text = matrixio.dumps({"b": np.float64(0.1), "a": SumRelation.SumLeq, "c": np.bool_(True)})
        assert text == matrixio.dumps(json.loads(text))
        assert list(json.loads(text)) == ["a", "b", "c"]
        assert json.loads(text)["b"] == 0.1

    def test_floats_carry_17_significant_digits(self):
        text = matrixio.dumps({"x": 0.1, "y": [np.float64(2.0), 1e-05], "z": 3})
        assert '"x": 0.10000000000000001' in text
        assert "2.0," in text
        assert "1.0000000000000001e-05" in text
        assert '"z": 3' in text
        assert json.loads(text) == {"x": 0.1, "y": [2.0, 1e-05], "z": 3}

    def test_digest_tracks_content(self):
        a = matrixio.instance_from_json(WORKED)
        b = matrixio.instance_from_json(dict(WORKED, D=scalar(5.5)))
        assert matrixio.instance_digest(a) != matrixio.instance_digest(b)
        assert len(matrixio.instance_digest(a)) == 56

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            matrixio.dumps({"x": object()})
