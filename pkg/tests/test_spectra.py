import math

from hypothesis import given, seed, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from src.errors import (
    FieldShiftUndefined,
    InvalidFamilyInput,
    UnstableConfiguration,
)
from src.model.constants import Constants
from src.model.moments import NCMoments, NCParams
from src.model.system import Particle, SystemSpec, Topology
from src.oracle.hamiltonian import build_hamiltonian
from src.oracle.normal_modes import normal_modes
from src.spectra.dispatch import closed_form_spectrum
from src.spectra.identical import (
    spectrum_commutative,
    spectrum_free_particles,
    spectrum_ho_interaction,
    spectrum_identical,
)
from src.spectra.levels import energy_level, enumerate_levels
from src.spectra.pair import spectrum_two
from src.spectra.result import (
    ModeLabel,
    QuantumNumbers,
    build_spectrum,
    frequency_from_square,
)
from src.spectra.triple import spectrum_three, spectrum_three_coordinate_nc

UNITS = Constants()


def moments_of(theta2, eta2) -> NCMoments:
    theta2 = np.asarray(theta2, dtype=float)
    root = np.sqrt(theta2)
    cross = np.outer(root, root)
    np.fill_diagonal(cross, theta2)
    return NCMoments(
        theta2=theta2,
        eta2=np.asarray(eta2, dtype=float),
        theta_cross=cross,
    )


def one(theta2: float = 0.0, eta2: float = 0.0):
    return moments_of([theta2], [eta2])


def two(theta2: float = 0.0, eta2: float = 0.0):
    return moments_of([theta2, theta2], [eta2, eta2])


def assert_frequencies(spectrum, expected, rel=1e-12):
    assert spectrum.sorted_frequencies() == pytest.approx(
        sorted(expected), rel=rel, abs=1e-13,
    )


def test_identical_commutative():
    spectrum = spectrum_identical(2, 1.0, 1.0, 1.0, 0.0, one(), UNITS)
    assert_frequencies(spectrum, [1.0, math.sqrt(5.0)])
    assert spectrum.modes[0].label == ModeLabel.CENTER_OF_MASS
    assert spectrum.modes[1].label == ModeLabel.RELATIVE


def test_identical_noncommutative():
    spectrum = spectrum_identical(
        2, 1.0, 1.0, 1.0, 0.0, one(0.06, 0.12), UNITS,
    )
    assert_frequencies(spectrum, [math.sqrt(1.0302), math.sqrt(5.271)])


def test_identical_merges_relative_modes():
    spectrum = spectrum_identical(3, 1.0, 1.0, 1.0, 0.0, one(), UNITS)
    assert len(spectrum.modes) == 2
    assert spectrum.modes[1].multiplicity == 2
    assert spectrum.modes[1].frequency == pytest.approx(math.sqrt(7.0))
    assert spectrum.n == 3


def test_identical_field_shift():
    spectrum = spectrum_identical(
        3, 2.0, 1.5, 1.0, 0.5, one(0.02, 0.1), UNITS,
    )
    com = spectrum.com_frequency()
    m_eff = 2.0 / (1.0 + 4.0 * 2.25 * 0.02 / 6.0)
    assert spectrum.field_shift == pytest.approx(
        -3.0 * 0.25 / (2.0 * m_eff * com * com), rel=1e-13,
    )


def test_free_particles():
    spectrum = spectrum_free_particles(1, 1.0, 0.0, one(eta2=0.24), UNITS)
    assert_frequencies(spectrum, [0.2])

    shifted = spectrum_free_particles(2, 2.0, 0.5, one(eta2=6.0), UNITS)
    assert shifted.field_shift == pytest.approx(-0.5, rel=1e-14)

    bare = spectrum_free_particles(1, 1.0, 0.0, one(), UNITS)
    assert bare.frequencies() == [0.0]
    assert bare.field_shift == 0.0


def test_free_particles_in_field_need_eta():
    with pytest.raises(FieldShiftUndefined, match="field shift undefined"):
        spectrum_free_particles(2, 1.0, 1.0, one(), UNITS)


def test_ho_interaction():
    spectrum = spectrum_ho_interaction(
        2, 1.0, 1.0, 0.0, one(eta2=0.06), UNITS,
    )
    assert_frequencies(spectrum, [0.1, math.sqrt(4.01)])

    spectrum = spectrum_ho_interaction(
        3, 1.0, 1.0, 0.0, one(theta2=0.01), UNITS,
    )
    assert spectrum.com_frequency() == 0.0
    assert_frequencies(spectrum, [0.0] + [math.sqrt(6.06)] * 2)

    # theta and eta together add k N <theta^2> <eta^2> / 18m
    spectrum = spectrum_ho_interaction(
        3, 1.0, 1.0, 0.0, one(0.015, 0.015), UNITS,
    )
    assert_frequencies(
        spectrum,
        [math.sqrt(0.0025)] + [math.sqrt(1.015 * 6.0025)] * 2,
    )


def test_ho_interaction_with_both_moments_matches_oracle():
    particle = Particle(mass=1.3, nc=NCParams(c_theta=0.2, c_eta=0.4))
    spec = SystemSpec.from_species(
        Topology.HO_INTERACTION, [particle], n=4, k=0.7,
    )
    closed = closed_form_spectrum(spec).sorted_frequencies()
    oracle = normal_modes(build_hamiltonian(spec)).tolist()
    assert closed == pytest.approx(oracle, rel=1e-12)


def test_ho_interaction_preconditions():
    with pytest.raises(InvalidFamilyInput):
        spectrum_ho_interaction(1, 1.0, 1.0, 0.0, one(), UNITS)
    with pytest.raises(InvalidFamilyInput):
        spectrum_ho_interaction(2, 1.0, 0.0, 0.0, one(), UNITS)


def test_pair_commutative():
    spectrum = spectrum_two(1.0, 2.0, 1.0, 0.5, 0.3, two(), UNITS)
    assert spectrum.com_frequency() == pytest.approx(math.sqrt(0.4))
    assert_frequencies(spectrum, [math.sqrt(0.4), math.sqrt(1.75)])


def test_pair_equal_particles_match_identical():
    moments = two(0.06, 0.12)
    pair = spectrum_two(1.0, 1.0, 1.0, 1.0, 1.0, moments, UNITS, kappa=0.3)
    identical = spectrum_identical(
        2, 1.0, 1.0, 1.0, 0.3, one(0.06, 0.12), UNITS,
    )
    assert_frequencies(pair, [math.sqrt(1.0302), math.sqrt(5.271)])
    assert_frequencies(pair, identical.frequencies())
    assert pair.field_shift == pytest.approx(identical.field_shift, rel=1e-12)


def test_pair_decoupled():
    moments = moments_of([0.04, 0.01], [0.2, 0.3])
    spectrum = spectrum_two(1.0, 3.0, 2.0, 0.5, 0.0, moments, UNITS)
    single = [
        spectrum_identical(1, m, w, 0.0, 0.0, one(t, e), UNITS).frequencies()[0]
        for m, w, t, e in ((1.0, 2.0, 0.04, 0.2), (3.0, 0.5, 0.01, 0.3))
    ]
    assert_frequencies(spectrum, single)


def test_triple_commutative_equal():
    spectrum = spectrum_three(1.0, 1.0, 1.0, 1.0, 1.0, two(), UNITS)
    assert_frequencies(spectrum, [1.0, math.sqrt(7.0), math.sqrt(7.0)])


def test_triple_quark_model():
    spectrum = spectrum_three(2.0, 1.0, 0.0, 0.0, 0.5, two(), UNITS)
    assert spectrum.com_frequency() == 0.0
    assert_frequencies(spectrum, [0.0, math.sqrt(2.0), math.sqrt(3.0)])


def test_triple_decoupled():
    spectrum = spectrum_three(1.0, 1.0, 1.0, 1.0, 0.0, two(), UNITS)
    assert_frequencies(spectrum, [1.0, 1.0, 1.0])


def test_triple_equal_particles_match_identical():
    spectrum = spectrum_three(
        1.5, 1.5, 0.8, 0.8, 0.7, two(0.03, 0.2), UNITS, kappa=0.4,
    )
    identical = spectrum_identical(
        3, 1.5, 0.8, 0.7, 0.4, one(0.03, 0.2), UNITS,
    )
    assert_frequencies(spectrum, identical.frequencies())
    assert spectrum.field_shift == pytest.approx(
        identical.field_shift, rel=1e-12,
    )


def test_coordinate_only_triple():
    commutative = spectrum_three_coordinate_nc(1.0, 1.0, 1.0, two(), UNITS)
    assert commutative.com_frequency() == 0.0
    assert_frequencies(commutative, [0.0, math.sqrt(6.0), math.sqrt(6.0)])

    spectrum = spectrum_three_coordinate_nc(
        1.0, 1.0, 1.0, two(theta2=0.06), UNITS,
    )
    assert spectrum.com_frequency() == 0.0
    # both relative frequencies square to 6 + 6 k^2 <theta^2> here
    assert_frequencies(spectrum, [0.0, math.sqrt(6.36), math.sqrt(6.36)])


def test_coordinate_only_rejects_eta():
    with pytest.raises(InvalidFamilyInput):
        spectrum_three_coordinate_nc(
            1.0, 1.0, 1.0, two(0.06, 0.1), UNITS,
        )


def test_field_shift_undefined_without_trap():
    with pytest.raises(FieldShiftUndefined, match="field shift undefined"):
        spectrum_identical(2, 1.0, 0.0, 1.0, 0.5, one(), UNITS)
    with pytest.raises(FieldShiftUndefined):
        spectrum_two(1.0, 2.0, 0.0, 0.0, 1.0, two(), UNITS, kappa=0.5)


def test_unstable_square_raises():
    assert frequency_from_square(1e-20, 1.0) == 0.0
    assert frequency_from_square(4.0, 4.0) == 2.0
    with pytest.raises(UnstableConfiguration, match="unstable configuration"):
        frequency_from_square(-0.5, 1.0)


def test_commutative_reference():
    spectrum = spectrum_commutative(4, 2.0, 1.0, 0.5, 0.0, UNITS)
    assert_frequencies(spectrum, [1.0] + [math.sqrt(1.0 + 2.0)] * 3)


def test_offset_added_to_ground_energy():
    constants = Constants(omega_osc=5.0)
    spectrum = spectrum_identical(2, 1.0, 1.0, 1.0, 0.0, one(), constants)
    assert spectrum.offset == 15.0
    assert spectrum.ground_energy == pytest.approx(
        1.5 + 1.5 * math.sqrt(5.0) + 15.0,
    )


def test_energy_levels():
    single = build_spectrum([1.0], [], 0.0, 0.0, 1.0)
    assert energy_level(single, QuantumNumbers.ground(1)) == 1.5

    spectrum = spectrum_identical(2, 1.0, 1.0, 1.0, 0.0, one(), UNITS)
    ground = energy_level(spectrum, QuantumNumbers.ground(2))
    assert ground == pytest.approx(1.5 + 1.5 * math.sqrt(5.0))
    excited = energy_level(
        spectrum, QuantumNumbers.from_lists([[1, 0, 0], [0, 0, 0]]),
    )
    assert excited == pytest.approx(ground + 1.0)


def test_negative_quantum_numbers_rejected():
    with pytest.raises(ValueError):
        QuantumNumbers.from_lists([[0, -1, 0]])


def test_enumerate_levels_single_family():
    single = build_spectrum([1.0], [], 0.0, 0.0, 1.0)
    levels = enumerate_levels(single, 1)
    assert [(lv.energy, lv.degeneracy) for lv in levels] == [(1.5, 1), (2.5, 3)]
    levels = enumerate_levels(single, 2)
    assert (3.5, 6) in [(lv.energy, lv.degeneracy) for lv in levels]


def test_enumerate_levels_incommensurate():
    spectrum = build_spectrum([1.0], [math.sqrt(2.0)], 0.0, 0.0, 1.0)
    levels = enumerate_levels(spectrum, 1)
    assert len(levels) == 3
    assert [lv.degeneracy for lv in levels] == [1, 3, 3]


def test_enumerate_levels_merges_degenerate():
    spectrum = spectrum_identical(3, 1.0, 1.0, 0.0, 0.0, one(), UNITS)
    levels = enumerate_levels(spectrum, 1)
    assert [lv.degeneracy for lv in levels] == [1, 9]


def test_dispatch_follows_topology():
    a = Particle(mass=1.0, omega=1.0, nc=NCParams(0.1, 0.1))
    b = Particle(mass=2.0, omega=0.5, nc=NCParams(0.05, 0.2))
    identical = SystemSpec.from_species(Topology.IDENTICAL, [a], n=3, k=1.0)
    assert closed_form_spectrum(identical).n == 3
    pair = SystemSpec.from_species(Topology.PAIR, [a, b], k=0.3)
    assert closed_form_spectrum(pair).n == 2
    triple = SystemSpec.from_species(Topology.TRIPLE, [a, b], k=0.3)
    assert closed_form_spectrum(triple).n == 3

    quark = Particle(mass=1.0, nc=NCParams(c_theta=0.1))
    coordinate = SystemSpec.from_species(
        Topology.COORDINATE_NC_TRIPLE, [quark, quark], k=1.0,
    )
    assert closed_form_spectrum(coordinate).com_frequency() == 0.0


@seed(5)
@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=8),
    mass=st.floats(min_value=0.1, max_value=5.0),
    omega=st.floats(min_value=0.1, max_value=5.0),
    k=st.floats(min_value=0.0, max_value=5.0),
    theta2=st.floats(min_value=0.0, max_value=0.05),
    eta2=st.floats(min_value=0.0, max_value=1.0),
    kappa=st.sampled_from([0.0, 0.5, 2.0]),
)
def test_spectrum_invariants(n, mass, omega, k, theta2, eta2, kappa):
    spectrum = spectrum_identical(
        n, mass, omega, k, kappa, one(theta2, eta2), UNITS,
    )
    assert spectrum.n == n
    assert all(f >= 0 for f in spectrum.frequencies())
    expected = sum(1.5 * f for f in spectrum.frequencies()) \
        + spectrum.field_shift + spectrum.offset
    assert spectrum.ground_energy == pytest.approx(expected, rel=1e-12)

    bare = spectrum_identical(n, mass, omega, k, 0.0, one(theta2, eta2), UNITS)
    assert spectrum.sorted_frequencies() == bare.sorted_frequencies()


@seed(9)
@settings(max_examples=50, deadline=None)
@given(
    mass=st.floats(min_value=0.5, max_value=2.0),
    omega=st.floats(min_value=0.5, max_value=2.0),
    k=st.floats(min_value=0.0, max_value=2.0),
    theta2=st.floats(min_value=0.0, max_value=0.1),
    eta2=st.floats(min_value=0.0, max_value=1.0),
)
def test_equal_particle_reductions(mass, omega, k, theta2, eta2):
    n2 = spectrum_identical(2, mass, omega, k, 0.0, one(theta2, eta2), UNITS)
    n3 = spectrum_identical(3, mass, omega, k, 0.0, one(theta2, eta2), UNITS)
    pair = spectrum_two(mass, mass, omega, omega, k, two(theta2, eta2), UNITS)
    triple = spectrum_three(
        mass, mass, omega, omega, k, two(theta2, eta2), UNITS,
    )
    assert_frequencies(pair, n2.frequencies())
    assert_frequencies(triple, n3.frequencies())


def test_commutative_collapse():
    for n, mass, omega, k, kappa in ((2, 1.0, 1.0, 1.0, 0.5), (5, 0.3, 2.0, 4.0, 1.0)):
        spectrum = spectrum_identical(n, mass, omega, k, kappa, one(), UNITS)
        assert_frequencies(
            spectrum,
            [omega] + [math.sqrt(omega ** 2 + 2.0 * n * k / mass)] * (n - 1),
            rel=1e-14,
        )
        assert spectrum.field_shift == pytest.approx(
            -n * kappa ** 2 / (2.0 * mass * omega ** 2), rel=1e-14,
        )
