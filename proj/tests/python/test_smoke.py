# Copyright 2026 The qmix Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import qmix


def half_mixed():
    return np.diag([0.5, 0.5]).astype(complex)


def test_purify_two_level():
    q = qmix.purify(half_mixed())
    np.testing.assert_array_equal(q.mat.alpha, half_mixed())
    np.testing.assert_allclose(q.mat.beta, [[0, -0.5], [0.5, 0]], atol=1e-15)
    assert q.classification == "Improper"
    assert qmix.rank(q.mat) == 1


def test_projection_and_validation():
    rho = qmix.random_density(4, "improper", 7)
    np.testing.assert_array_equal(qmix.project(rho), rho.mat.alpha)
    assert abs(qmix.real_trace(rho.mat) - 1.0) < 1e-12
    assert min(qmix.eigvals(rho.mat)) > -1e-10
    with pytest.raises(qmix.QmixError) as info:
        qmix.validate(qmix.QMatrix(2 * half_mixed()))
    assert info.value.kind == "TraceNotOne"


def test_lift_out_of_range():
    with pytest.raises(qmix.QmixError) as info:
        qmix.lift(half_mixed(), 3)
    assert info.value.kind == "RankOutOfRange"


def test_chi_round_trip():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q = qmix.QMatrix(a, b)
    back = qmix.chi_inverse(qmix.chi(q))
    np.testing.assert_array_equal(back.alpha, a)
    np.testing.assert_array_equal(back.beta, b)


def test_dynamics_leak():
    jI = qmix.QMatrix(np.zeros((2, 2), complex), np.eye(2, dtype=complex))
    psi = np.array([1, 1j]) / math.sqrt(2)
    rho = qmix.validate(qmix.QMatrix(np.outer(psi, psi.conj())))
    gen = qmix.Generator(jI)
    assert qmix.partition_leak(rho, gen) == pytest.approx(abs(math.sin(2)) / math.sqrt(2), abs=1e-14)
    u = qmix.time_ordered(gen, 1.0, 1)
    np.testing.assert_allclose(
        qmix.projected_evolution(rho, u), qmix.project(qmix.evolve(rho, u)), atol=1e-12
    )
    out = qmix.integrate(rho, gen, 1.0, 500)
    np.testing.assert_allclose(out.mat.beta, qmix.evolve(rho, u).mat.beta, atol=1e-10)


def test_partial_trace_and_schmidt():
    s = 1 / math.sqrt(2)
    psi = np.array([s, 0, 0, s], complex)
    terms = qmix.schmidt(psi, 2, 2)
    assert [w for w, _, _ in terms] == pytest.approx([s, s])
    reduced = qmix.partial_trace(np.outer(psi, psi.conj()), 2, 2, 2)
    np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-15)


def test_scenario_report():
    report = qmix.run_scenario(math.sqrt(0.7), math.sqrt(0.3))
    assert report["schema_version"] == 1
    assert report["all_passed"]
    assert report["quaternionic_discriminator"]["improper"] == pytest.approx(0.42, abs=1e-10)


def test_check_propositions():
    summary = qmix.check_propositions(4, 25, 1)
    assert all(r["passed"] == r["trials"] for r in summary["results"])
