import math

import pytest

import spinquant as sq

PI = math.pi


def test_spinor_construction_and_norm():
    s = sq.make_spinor(sq.SpinDirection(theta=0.0))
    assert s.c_plus == pytest.approx(1.0)
    assert abs(s.c_minus) == pytest.approx(0.0)
    for theta in (0.3, 1.1, 2.9):
        s = sq.make_spinor(sq.SpinDirection(theta=theta, phi=0.7))
        assert s.norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_precession_wraps_and_accumulates():
    d = sq.precess(sq.SpinDirection(theta=1.0, phi=0.0), 2.0 * PI)
    assert d.theta == 1.0
    assert d.phi == pytest.approx(0.0, abs=1e-12)
    assert d.tau_since_scatter == pytest.approx(2.0 * PI)


def test_energy_and_coherence():
    assert sq.energy(0.0) == pytest.approx(0.5)
    assert sq.energy(PI) == pytest.approx(-0.5)
    z = sq.coherence_term(sq.SpinDirection(theta=PI / 2, phi=0.0))
    assert z == pytest.approx(0.5)
    with pytest.raises(ValueError):
        sq.energy(4.0)


def test_broadened_delta_peak_and_domain():
    assert sq.broadened_delta(0.0, 10.0 * PI) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        sq.broadened_delta(0.1, -1.0)


def test_dos_values():
    assert sq.dos_rho_bar(0.0, 10.0 * PI) == pytest.approx(5.0, rel=1e-9)
    assert sq.dos_rho_bar(PI / 2, PI) == pytest.approx(4.0 / PI**2, rel=1e-9)


def test_rng_is_counter_based():
    a = sq.RngStream(master_seed=7, path_index=3)
    b = sq.RngStream(master_seed=7, path_index=3)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    c = sq.RngStream(master_seed=7, path_index=4)
    assert c.next_u64() != sq.RngStream(7, 3).next_u64()


def test_paths_and_snapshot_roundtrip():
    tau_c = 2.0 * PI * 5.0
    table = sq.build_rate_table(tau_c, n_theta=512, n_tau=256, tau_max=4.0 * tau_c)
    paths = sq.run_paths(200, 2.0 * tau_c, table, master_seed=99, n_threads=1)
    assert len(paths) == 200

    again = sq.run_paths(200, 2.0 * tau_c, table, master_seed=99, n_threads=2)
    for p, q in zip(paths, again):
        assert len(p.events) == len(q.events)
        for e, f in zip(p.events, q.events):
            assert e.tau_lab == f.tau_lab
            assert e.dir_after.theta == f.dir_after.theta

    snap = sq.snapshot(paths, 2.0 * tau_c, n_bins=20)
    assert sum(snap.theta_histogram) == 200
    assert snap.trace == pytest.approx(1.0, abs=1e-12)
    assert 0.0 <= snap.coherence_mag <= 0.5

    series = sq.coherence_series(paths, [0.0, tau_c, 2.0 * tau_c])
    assert series[0].coherence_mag == pytest.approx(1.0 / PI, abs=0.1)
    assert sq.mixedness_check(snap) >= 0.0


def test_flight_times_follow_the_cumulative_table():
    tau_c = 2.0 * PI * 5.0
    table = sq.build_rate_table(tau_c, n_theta=512, n_tau=512, tau_max=4.0 * tau_c)
    rng = sq.RngStream(master_seed=5, path_index=0)
    tf = sq.sample_flight_time(sq.SpinDirection(theta=0.0), table, rng)
    assert tf is None or 0.0 < tf <= table.tau_max


def test_config_validation():
    cfg = sq.validate_config("tau_c_over_period = 20\nn_paths = 50\n")
    assert cfg.tau_c == pytest.approx(40.0 * PI)
    assert cfg.n_paths == 50
    with pytest.raises(ValueError):
        sq.validate_config("n_paths = -5\n")
    with pytest.raises(ValueError):
        sq.validate_config("who_knows = 1\n")


def test_run_experiment_emits_artifacts(tmp_path):
    cfg = sq.validate_config(
        "tau_c_over_period = 5\nn_paths = 100\nn_theta_grid = 512\nn_tau_grid = 256\n"
    )
    cfg.output_dir = str(tmp_path / "run")
    manifest = sq.run_experiment(cfg)
    assert manifest.n_events_total > 0
    names = sorted(p.name for p in (tmp_path / "run").iterdir())
    assert "dos_curves.csv" in names
    assert "manifest.json" in names
    assert "coherence.csv" in names
    assert any(n.startswith("hist_") for n in names)
