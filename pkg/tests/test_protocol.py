import json
from fractions import Fraction

import numpy as np
import pytest

from src.errors import SizeGuardError
from src.group_integrals import GroupSpec, RngStream, haar_samples, performance_operator_exact
from src.hypothesis_testing import beta_optimal
from src.protocol import (
    accept_all_protocol,
    build_optimal_protocol,
    build_protocol,
    cg_half,
    check_leakage,
    extremal_elements,
    idle_extension,
    performance_operator_blocks,
    schur_basis,
    simulate,
)
from src.rep_core import IrrepLabel, O2OneDim, SubgroupKind, TorusWeight, branching_table

SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)
TRIPLET_ZERO = np.array([0, 1, 1, 0]) / np.sqrt(2)


class TestSchurBasis:
    def test_clebsch_gordan_normalization(self):
        for two_j in range(0, 6):
            for two_m in range(-two_j - 1, two_j + 2, 2):
                up = cg_half(two_j, two_j + 1, two_m, 1) ** 2 + cg_half(two_j, two_j + 1, two_m, -1) ** 2
                assert up == pytest.approx(1.0)

    def test_single_qubit(self):
        basis = schur_basis(1)
        assert len(basis.blocks) == 1
        np.testing.assert_allclose(basis.blocks[0].vectors, np.eye(2))

    def test_two_qubits(self):
        basis = schur_basis(2)
        singlet, triplet = basis.blocks
        np.testing.assert_allclose(singlet.vectors[0], SINGLET, atol=1e-14)
        np.testing.assert_allclose(triplet.vectors, [[1, 0, 0, 0], TRIPLET_ZERO, [0, 0, 0, 1]], atol=1e-14)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_multiplicities_and_unitarity(self, n):
        basis = schur_basis(n)
        full = basis.matrix()
        np.testing.assert_allclose(full @ full.conj().T, np.eye(2 ** n), atol=1e-10)
        assert check_leakage(basis, samples=5) < 1e-9

    def test_copies_are_ordered_by_path(self):
        basis = schur_basis(3)
        copies = basis.copies(IrrepLabel.from_two_j(3, 1))
        assert [b.copy for b in copies] == [0, 1]
        assert copies[0].path < copies[1].path

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            schur_basis(7)
        with pytest.raises(ValueError):
            schur_basis(0)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_block_operator_matches_weingarten(self, n):
        blocks = performance_operator_blocks(n)
        weingarten = performance_operator_exact(GroupSpec.unitary_full(), n)
        assert np.max(np.abs(blocks.matrix - weingarten.matrix)) < 1e-10


class TestOptimalProtocol:
    def test_z_symmetry_two_queries(self):
        protocol = build_optimal_protocol(SubgroupKind.TORUS, 2)
        assert protocol.reference_free
        assert protocol.reference_dim == 1
        assert protocol.eta == TorusWeight((1, 1))
        assert protocol.target_beta == Fraction(1, 4)
        assert protocol.weights == {"[1,1]": Fraction(1, 4), "[2,0]": Fraction(3, 4)}
        expected = 0.5 * SINGLET + np.sqrt(3) / 2 * TRIPLET_ZERO
        assert abs(np.vdot(expected, protocol.input_state.amplitudes)) == pytest.approx(1.0)

    def test_identity_single_query_uses_bell_state(self):
        protocol = build_optimal_protocol(SubgroupKind.TRIVIAL, 1)
        assert not protocol.reference_free
        assert protocol.reference_dim == 2
        np.testing.assert_allclose(protocol.input_state.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-14)
        assert protocol.target_beta == Fraction(1, 4)
        hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        assert protocol.acceptance(hadamard) == pytest.approx(0.0, abs=1e-12)

    def test_t_symmetry_odd_queries_reuse_plateau(self):
        protocol = build_optimal_protocol(SubgroupKind.ORTHOGONAL, 3)
        assert protocol.n == 3
        assert protocol.reference_free
        assert protocol.eta == O2OneDim(1)
        assert protocol.target_beta == Fraction(1, 3)

    def test_t_symmetry_single_query_accepts_all(self):
        protocol = build_optimal_protocol(SubgroupKind.ORTHOGONAL, 1)
        assert protocol.target_beta == 1
        assert protocol.acceptance(np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_target_is_optimal(self, subgroup, n):
        assert build_optimal_protocol(subgroup, n).target_beta == beta_optimal(subgroup, n)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_zero_type_i_error(self, subgroup, n):
        protocol = build_optimal_protocol(subgroup, n)
        for g in extremal_elements(GroupSpec.for_subgroup(subgroup)):
            assert protocol.acceptance(g) >= 1 - 1e-9
        assert protocol.invariance_deviation(samples=10, rng=RngStream(5)) < 1e-8

    @pytest.mark.parametrize("n", range(1, 7))
    def test_symmetry_tests_need_no_reference(self, n):
        assert build_optimal_protocol(SubgroupKind.TORUS, n).reference_free
        assert build_optimal_protocol(SubgroupKind.ORTHOGONAL, n).reference_free

    @pytest.mark.parametrize("n", range(1, 6))
    def test_identity_test_needs_reference(self, n):
        protocol = build_optimal_protocol(SubgroupKind.TRIVIAL, n)
        assert not protocol.reference_free
        assert protocol.reference_dim == 2 ** n

    @pytest.mark.parametrize("n", [2, 4])
    def test_acceptance_is_constant_on_subgroup(self, subgroup, n):
        protocol = build_optimal_protocol(subgroup, n)
        group = GroupSpec.for_subgroup(subgroup)
        samples = np.concatenate([extremal_elements(group), haar_samples(group, 20, RngStream(9))])
        acceptance = np.array([protocol.acceptance(g) for g in samples])
        assert np.var(acceptance) <= 1e-18

    def test_reference_free_identity_protocol(self):
        table = branching_table(SubgroupKind.TRIVIAL, 4)
        protocol = build_protocol(table, table.etas()[0], reference_free_only=True)
        assert protocol.reference_dim == 1
        assert protocol.target_beta == Fraction(1, 10)

    def test_reference_free_needs_admissible_irrep(self):
        table = branching_table(SubgroupKind.TRIVIAL, 1)
        with pytest.raises(ValueError):
            build_protocol(table, table.etas()[0], reference_free_only=True)

    def test_idle_extension_keeps_error(self):
        base = build_optimal_protocol(SubgroupKind.TORUS, 2)
        extended = idle_extension(base)
        assert extended.n == 3
        u = np.array([[0, 1], [1, 0]])
        assert extended.acceptance(u) == pytest.approx(base.acceptance(u))

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            build_optimal_protocol(SubgroupKind.TORUS, 7)
        with pytest.raises(SizeGuardError):
            build_optimal_protocol(SubgroupKind.TORUS, 0)
        with pytest.raises(SizeGuardError):
            build_optimal_protocol(SubgroupKind.TRIVIAL, 6)

    def test_json_export(self):
        payload = json.loads(build_optimal_protocol(SubgroupKind.TORUS, 2).to_json())
        assert payload["target_beta"] == "1/4"
        assert payload["eta"] == {"kind": "torus_weight", "weight": [1, 1]}
        assert len(payload["input_state"]) == 4


class TestSimulation:
    def test_accept_all(self, rng):
        report = simulate(accept_all_protocol(SubgroupKind.TORUS, 2), null_shots=200, alt_shots=200, rng=rng)
        assert report.type_i_worst == pytest.approx(0.0, abs=1e-12)
        assert report.type_ii_mean == pytest.approx(1.0)

    def test_deterministic_across_threads(self, rng):
        protocol = build_optimal_protocol(SubgroupKind.TORUS, 2)
        single = simulate(protocol, null_shots=500, alt_shots=5000, rng=rng, threads=1)
        pooled = simulate(protocol, null_shots=500, alt_shots=5000, rng=rng, threads=4)
        assert single == pooled

    def test_shot_floor(self, rng):
        with pytest.raises(ValueError):
            simulate(accept_all_protocol(SubgroupKind.TORUS, 1), null_shots=10, alt_shots=1000, rng=rng)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 5))
    def test_reaches_target(self, subgroup, n, rng):
        protocol = build_optimal_protocol(subgroup, n)
        report = simulate(protocol, null_shots=10_000, alt_shots=100_000, rng=rng)
        assert report.type_i_worst <= 1e-9
        assert abs(report.type_ii_mean - float(protocol.target_beta)) <= 4 * report.type_ii_stderr + 1e-12
        payload = json.loads(report.to_json())
        assert payload["n"] == n
