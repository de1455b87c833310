import math

import numpy as np
import pytest

from hcmkit import core, oracle
from hcmkit.errors import TooCoarse

# Dimensionless chain energies (units of EI_eta/l) for the 60-link pneumatic
# build, frozen from the first converged run of this solver.
WELL_ND = 13.8177
SADDLE_ND = 18.0249
BARRIER_ND = 4.2072
TIP_DEG = 81.27


def nd(state_energy, ribbon):
    return state_energy / ribbon.energy_scale


def test_build_discretization(pneumatic_ribbon):
    rib = pneumatic_ribbon
    assert rib.n_links == 60
    assert abs(rib.link_length - 87.5e-3 / 60.0) < 1e-15
    # kink snaps to the nearest joint: node 9 of 60 (13.125 mm vs true 12.5 mm)
    assert rib.rest_kink_index == 8
    assert abs(rib.rest_kink_angle - math.radians(-3.0)) < 1e-15
    assert abs(rib.energy_scale - 1.3668567132857142e-3) < 1e-15
    # rest blank is planar and kinked at the snap node
    z = rib.node_positions[:, 2]
    assert np.max(np.abs(z)) == 0.0
    seg = np.diff(rib.node_positions, axis=0)
    assert abs(np.sum(np.linalg.norm(seg, axis=1)) - 87.5e-3) < 1e-12


def test_joint_stiffness_allocation(pneumatic_ribbon, pneumatic_geom, plastic):
    # sum of out-of-plane joint compliances equals the strip compliance l/EI
    sec = core.section_properties(pneumatic_geom, plastic)
    EI = plastic.E * sec.I_eta
    m = pneumatic_ribbon.n_links - 1
    total_compliance = m * (1.0 / pneumatic_ribbon.k_bend_out)
    assert abs(total_compliance - 87.5e-3 / EI) < 1e-9 * (87.5e-3 / EI)


def test_wells(pneumatic_ribbon, pneumatic_wells):
    plus, minus = pneumatic_wells
    assert plus.converged and minus.converged
    assert abs(nd(plus.energy, pneumatic_ribbon) - WELL_ND) < 1e-3 * WELL_ND
    assert abs(math.degrees(plus.psi_tip) - TIP_DEG) < 0.05
    assert abs(math.degrees(minus.psi_tip) + TIP_DEG) < 0.05
    # pinned extremities must close to within 1e-4 of the half-length
    assert plus.gap < 1e-4 * pneumatic_ribbon.l
    assert minus.gap < 1e-4 * pneumatic_ribbon.l


def test_mirror_degeneracy(pneumatic_wells):
    plus, minus = pneumatic_wells
    assert abs(plus.energy - minus.energy) <= 1e-9 * plus.energy


def test_mirror_reflection_is_exact(pneumatic_ribbon, pneumatic_wells):
    # flipping out-of-plane bends and twists reproduces the energy exactly
    plus, _ = pneumatic_wells
    solver = oracle._Solver(pneumatic_ribbon)
    q_ref = plus.q.copy()
    q_ref[solver.m :] = -q_ref[solver.m :]
    E1 = solver.energy_grad(plus.q, 1e6)[1]
    E2 = solver.energy_grad(q_ref, 1e6)[1]
    assert E1 == E2


def test_saddle_and_barrier(pneumatic_ribbon, pneumatic_wells, pneumatic_saddle):
    plus, minus = pneumatic_wells
    saddle = pneumatic_saddle
    assert saddle.converged
    assert saddle.gap < 1e-4 * pneumatic_ribbon.l
    assert abs(nd(saddle.energy, pneumatic_ribbon) - SADDLE_ND) < 1e-3 * SADDLE_ND
    barrier = saddle.energy - min(plus.energy, minus.energy)
    assert barrier >= 0.0
    assert abs(nd(barrier, pneumatic_ribbon) - BARRIER_ND) < 2e-3 * BARRIER_ND
    # the saddle sits between the wells: small tip, not a third well
    assert abs(math.degrees(saddle.psi_tip)) < 10.0


def test_gradient_matches_finite_differences(pneumatic_ribbon):
    assert oracle.gradient_check(pneumatic_ribbon) < 1e-5


def test_report_struct(pneumatic_geom, plastic):
    rep = oracle.oracle_report(pneumatic_geom, plastic, n_links=40)
    assert rep.converged
    assert rep.barrier == rep.U_saddle - rep.U_min
    assert abs(rep.barrier - 0.00596145953174) < 1e-3 * rep.barrier
    assert abs(math.degrees(rep.psi_tip) - 81.1684176245) < 0.05
    assert rep.iterations > 0


def test_mesh_refinement_drift(pneumatic_geom, plastic):
    r80 = oracle.oracle_report(pneumatic_geom, plastic, n_links=80)
    b80 = r80.barrier / oracle.build_discrete(pneumatic_geom, plastic, 80).energy_scale
    b40 = 4.3614  # measured once at n_links=40; report_struct covers the run
    assert abs(b40 / b80 - 1.0) < 0.10


def test_too_coarse(pneumatic_geom, plastic):
    with pytest.raises(TooCoarse):
        oracle.build_discrete(pneumatic_geom, plastic, n_links=10)


def test_bad_side_rejected(pneumatic_ribbon):
    with pytest.raises(ValueError):
        oracle.find_equilibrium(pneumatic_ribbon, side="sideways")


def test_nodes_csv(pneumatic_wells):
    plus, _ = pneumatic_wells
    text = oracle.nodes_to_csv(plus)
    lines = text.strip().split("\n")
    assert lines[0] == "node_index,x_m,y_m,z_m"
    assert len(lines) == 1 + 61
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[1]) == 0.0
