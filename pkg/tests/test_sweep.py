import math

import numpy as np
import pytest

from duocavity import (
    NoCrossing,
    SweepAxis,
    SweepSpec,
    UnknownPreset,
    csv_bytes,
    figure_base,
    find_threshold,
    preset,
    preset_names,
    run_sweep,
)

from helpers import make_params


def strip_timestamp(payload: bytes) -> bytes:
    return b"\n".join(
        line for line in payload.splitlines() if not line.startswith(b"# timestamp")
    )


class TestPresets:
    def test_names(self):
        assert preset_names() == ("fig2", "fig3", "fig4", "fig5")

    def test_unknown(self):
        with pytest.raises(UnknownPreset):
            preset("fig9")

    def test_fig2_fixed_values(self):
        spec = preset("fig2")
        assert spec.base.r == 1.5
        assert spec.base.theta == 0.0
        assert spec.base.lam == pytest.approx(0.2 * spec.base.Gamma)
        assert spec.base.alpha == pytest.approx(0.0015 * spec.base.Gamma)
        assert spec.axes[0].name == "T"
        assert spec.family == "beta"
        assert len(spec.family_values) == 3

    def test_fig3_family_is_temperature(self):
        spec = preset("fig3")
        assert spec.base.r == 3.0
        assert spec.family == "T"
        assert spec.axes[0].name == "lam"

    def test_fig4_base(self):
        spec = preset("fig4")
        assert spec.base.T == pytest.approx(0.2e-3)
        assert spec.base.beta == pytest.approx(0.0002 * spec.base.Gamma)
        assert spec.axes[0].name == "r"
        assert spec.family == "lam"

    def test_fig5_two_axes(self):
        spec = preset("fig5")
        assert spec.base.r == 2.0
        assert spec.base.T == pytest.approx(0.02e-3)
        assert spec.base.beta == pytest.approx(0.002 * spec.base.Gamma)
        assert [axis.name for axis in spec.axes] == ["alpha", "lam"]
        assert spec.family is None

    def test_bases_are_weak_coupling(self):
        from duocavity import coupling_strength

        base = figure_base()
        assert base.rwa_valid
        assert coupling_strength(
            base.replace(alpha=0.0015 * base.Gamma)
        ) / base.Gamma == pytest.approx(0.0894, abs=1e-3)


class TestSpecValidation:
    def test_rejects_unknown_axis(self):
        with pytest.raises(ValueError):
            SweepSpec(base=figure_base(), axes=(SweepAxis("bogus", 0, 1, 5),))

    def test_rejects_bad_point_count(self):
        with pytest.raises(ValueError):
            SweepSpec(base=figure_base(), axes=(SweepAxis("T", 0, 1, 0),))

    def test_rejects_empty_family(self):
        with pytest.raises(ValueError):
            SweepSpec(
                base=figure_base(),
                axes=(SweepAxis("T", 0, 1, 3),),
                family="beta",
                family_values=(),
            )

    def test_rejects_three_axes(self):
        axes = tuple(SweepAxis(n, 0, 1, 3) for n in ("T", "r", "lam"))
        with pytest.raises(ValueError):
            SweepSpec(base=figure_base(), axes=axes)


class TestRunSweep:
    def test_single_point_vacuum(self):
        base = make_params(P=0.0, T=0.0, r=0.0)
        spec = SweepSpec(base=base, axes=(SweepAxis("T", 0.0, 0.0, 1),))
        result = run_sweep(spec)
        assert len(result.records) == 1
        rec = result.records[0]
        assert rec.stable
        assert rec.E_N == 0.0
        assert rec.nu_minus == pytest.approx(0.5, rel=1e-12)

    def test_unstable_points_marked_nan(self):
        # with the drive off the amplifier destabilizes at lam = Gamma/4
        base = make_params(P=0.0)
        spec = SweepSpec(base=base, axes=(SweepAxis("lam", 0.2, 0.3, 5),))
        result = run_sweep(spec)
        stable_flags = [rec.stable for rec in result.records]
        assert stable_flags == [True, True, False, False, False]
        for rec in result.records:
            if not rec.stable:
                assert math.isnan(rec.E_N)
                assert math.isnan(rec.nu_minus)
            else:
                assert rec.E_N == 0.0

    def test_grid_ordering_family_major(self):
        base = make_params()
        spec = SweepSpec(
            base=base,
            axes=(SweepAxis("T", 0.0, 0.1, 3),),
            family="beta",
            family_values=(0.0, 0.001),
        )
        result = run_sweep(spec)
        assert [rec.index for rec in result.records] == [
            (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)
        ]
        assert [rec.family_value for rec in result.records] == [
            0.0, 0.0, 0.0, 0.001, 0.001, 0.001
        ]

    def test_two_axis_grid(self):
        base = make_params(P=0.0)
        spec = SweepSpec(
            base=base,
            axes=(SweepAxis("T", 0.0, 0.1, 2), SweepAxis("r", 0.0, 1.0, 3)),
        )
        result = run_sweep(spec)
        assert len(result.records) == 6
        assert result.records[0].axis_values == (0.0, 0.0)
        assert result.records[-1].axis_values == (0.1, 1.0)

    def test_determinism_and_schedule_independence(self):
        spec = preset("fig2")
        small = SweepSpec(
            base=spec.base,
            axes=(SweepAxis("T", 0.0, 0.4, 5),),
            family=spec.family,
            family_values=spec.family_values,
            stability_margin=spec.stability_margin,
            label="small",
        )
        serial_1 = strip_timestamp(csv_bytes(run_sweep(small, jobs=1)))
        serial_2 = strip_timestamp(csv_bytes(run_sweep(small, jobs=1)))
        threaded = strip_timestamp(csv_bytes(run_sweep(small, jobs=4)))
        assert serial_1 == serial_2
        assert serial_1 == threaded


class TestCsv:
    def test_layout(self):
        base = make_params(P=0.0)
        spec = SweepSpec(
            base=base,
            axes=(SweepAxis("T", 0.0, 0.1, 2),),
            family="beta",
            family_values=(0.0,),
        )
        payload = csv_bytes(run_sweep(spec)).decode()
        lines = payload.splitlines()
        meta = [ln for ln in lines if ln.startswith("#")]
        data = [ln for ln in lines if not ln.startswith("#")]
        assert any(ln.startswith("# timestamp") for ln in meta)
        assert any(ln.startswith("# base:") for ln in meta)
        assert data[0] == "beta_over_Gamma,T_mK,E_N,nu_minus,stable,residual"
        assert len(data) == 1 + 2
        first = data[1].split(",")
        assert first[0] == "0.0"
        assert first[4] == "1"

    def test_nan_markers_in_csv(self):
        base = make_params(P=0.0)
        spec = SweepSpec(base=base, axes=(SweepAxis("lam", 0.26, 0.3, 2),))
        payload = csv_bytes(run_sweep(spec)).decode()
        data_rows = [
            ln for ln in payload.splitlines() if ln and not ln.startswith("#")
        ][1:]
        for row in data_rows:
            cells = row.split(",")
            assert cells[1] == "nan"
            assert cells[3] == "0"


class TestThreshold:
    def test_no_crossing(self):
        base = make_params(P=0.0)  # separable everywhere
        spec = SweepSpec(base=base, axes=(SweepAxis("T", 0.0, 0.5, 6),))
        with pytest.raises(NoCrossing):
            find_threshold(spec, "death", 1e-3)

    def test_death_in_temperature(self):
        spec = preset("fig2")
        single = SweepSpec(
            base=spec.base,
            axes=(SweepAxis("T", 0.0, 1.3, 14),),
            family="beta",
            family_values=(0.002,),
            stability_margin=spec.stability_margin,
        )
        report = find_threshold(single, "death", 1e-3)
        assert report.kind == "death"
        assert report.axis == "T_mK"
        assert report.x_hi - report.x_lo <= 1e-3
        assert report.E_N_lo > 0.0
        assert report.E_N_hi == 0.0
        assert 0.5 < report.estimate < 1.3

    def test_birth_in_squeezing(self):
        spec = preset("fig4")
        single = SweepSpec(
            base=spec.base,
            axes=(SweepAxis("r", 0.0, 2.0, 11),),
            family="lam",
            family_values=(0.2,),
            stability_margin=spec.stability_margin,
        )
        report = find_threshold(single, "birth", 1e-3)
        assert report.kind == "birth"
        assert report.E_N_lo == 0.0
        assert report.E_N_hi > 0.0
        assert report.estimate > 0.0
        assert report.x_hi - report.x_lo <= 1e-3

    def test_rejects_bad_kind(self):
        spec = preset("fig2")
        with pytest.raises(ValueError):
            find_threshold(spec, "sideways", 1e-3)

    def test_rejects_two_axes(self):
        with pytest.raises(ValueError):
            find_threshold(preset("fig5"), "death", 1e-3)
