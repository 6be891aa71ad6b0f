import hashlib
import json
from pathlib import Path

import pytest

from figplots import ChecksumError, PlotJob, SchemaError, render, render_all
from figplots.cli import main

IV_HEADER = "case,v_d_V,i_up_A,i_dn_A,i_total_A,quad_err_A"
METRICS_HEADER = ("case,v_d_V,delta_eV,delta_i_A,mean_i_A,"
                  "shot_noise_A2_per_Hz,t_meas_s,t_dec_s,count")

IV_BODY = "\n".join([
    IV_HEADER,
    "reference,0.0e+00,0.0e+00,0.0e+00,0.0e+00,1.0e-18",
    "reference,1.0e-03,2.4e-10,2.4e-10,4.8e-10,1.0e-16",
    "case_i,0.0e+00,0.0e+00,0.0e+00,0.0e+00,1.0e-18",
    "case_i,1.0e-03,1.0e-10,2.4e-10,3.4e-10,1.0e-16",
]) + "\n"

METRICS_BODY = "\n".join([
    METRICS_HEADER,
    "case_i,2.225e-03,1.0e-04,2.2e-10,2.4e-10,7.7e-29,6.4e-09,1.0e-06,1.56e+02",
    "case_i,2.225e-03,2.0e-04,2.1e-10,2.4e-10,7.7e-29,6.9e-09,1.0e-06,1.44e+02",
]) + "\n"


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def manifest_for(tmp_path: Path, files: list[tuple[str, str]],
                 figure_id="fig3") -> Path:
    entries = []
    for name, family in files:
        digest = hashlib.sha256((tmp_path / name).read_bytes()).hexdigest()
        entries.append({"name": name, "sha256": digest, "family": family})
    payload = {"name": figure_id, "figure_id": figure_id, "files": entries}
    return write(tmp_path / f"{figure_id}_manifest.json",
                 json.dumps(payload, indent=2))


class TestRender:
    def test_iv_render_writes_image(self, tmp_path):
        csv = write(tmp_path / "fig3_iv.csv", IV_BODY)
        out = render(PlotJob(csv, "fig3", tmp_path / "fig3.svg", family="iv"))
        assert out.exists()
        assert b"<svg" in out.read_bytes()[:200]

    def test_metrics_render(self, tmp_path):
        csv = write(tmp_path / "fig6_metrics.csv", METRICS_BODY)
        out = render(PlotJob(csv, "fig6", tmp_path / "fig6.svg",
                             family="metrics_fixed"))
        assert out.exists()

    def test_png_render(self, tmp_path):
        csv = write(tmp_path / "fig3_iv.csv", IV_BODY)
        out = render(PlotJob(csv, "fig3", tmp_path / "fig3.png",
                             family="iv", image_format="png"))
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_header_only_is_error_and_no_file(self, tmp_path):
        csv = write(tmp_path / "empty.csv", IV_HEADER + "\n")
        target = tmp_path / "empty.svg"
        with pytest.raises(SchemaError, match="no data rows"):
            render(PlotJob(csv, "fig3", target, family="iv"))
        assert not target.exists()

    def test_schema_mismatch_names_columns(self, tmp_path):
        body = IV_BODY.replace("i_total_A", "i_sum_A")
        csv = write(tmp_path / "bad.csv", body)
        with pytest.raises(SchemaError, match="i_total_A"):
            render(PlotJob(csv, "fig3", tmp_path / "bad.svg", family="iv"))

    def test_byte_identical_repeat_render(self, tmp_path):
        csv = write(tmp_path / "fig3_iv.csv", IV_BODY)
        a = render(PlotJob(csv, "fig3", tmp_path / "a.svg", family="iv"))
        b = render(PlotJob(csv, "fig3", tmp_path / "b.svg", family="iv"))
        assert a.read_bytes() == b.read_bytes()

    def test_input_is_never_modified(self, tmp_path):
        csv = write(tmp_path / "fig3_iv.csv", IV_BODY)
        before = csv.read_bytes()
        render(PlotJob(csv, "fig3", tmp_path / "x.svg", family="iv"))
        assert csv.read_bytes() == before

    def test_bad_format_rejected(self, tmp_path):
        with pytest.raises(Exception):
            PlotJob(tmp_path / "x.csv", "fig3", tmp_path / "x.gif",
                    image_format="gif")


class TestRenderAll:
    def test_renders_every_listed_file(self, tmp_path):
        write(tmp_path / "fig3_iv.csv", IV_BODY)
        write(tmp_path / "fig6_metrics.csv", METRICS_BODY)
        manifest = manifest_for(tmp_path, [("fig3_iv.csv", "iv"),
                                           ("fig6_metrics.csv", "metrics_fixed")])
        out = tmp_path / "img"
        written = render_all(manifest, out)
        assert sorted(p.name for p in written) == ["fig3_iv.svg",
                                                   "fig6_metrics.svg"]

    def test_checksum_mismatch_aborts_before_rendering(self, tmp_path):
        write(tmp_path / "fig3_iv.csv", IV_BODY)
        manifest = manifest_for(tmp_path, [("fig3_iv.csv", "iv")])
        # corrupt the CSV after the manifest was written
        (tmp_path / "fig3_iv.csv").write_text(IV_BODY + "tampered\n")
        out = tmp_path / "img"
        with pytest.raises(ChecksumError, match="fig3_iv.csv"):
            render_all(manifest, out)
        assert not out.exists()

    def test_empty_file_list_is_noop_success(self, tmp_path):
        manifest = write(tmp_path / "m.json",
                         json.dumps({"name": "x", "figure_id": "x", "files": []}))
        assert render_all(manifest, tmp_path / "img") == []

    def test_fig7_circuit_renders_vout_view(self, tmp_path):
        rows = IV_BODY.strip().splitlines()
        body = [rows[0] + ",v_out_V,v_ds_V,residual_A"]
        body += [line + ",9.9e-04,1.0e-05,1.0e-18" for line in rows[1:]]
        write(tmp_path / "fig7a_circuit.csv", "\n".join(body) + "\n")
        manifest = manifest_for(tmp_path, [("fig7a_circuit.csv", "circuit")],
                                figure_id="fig7a")
        written = render_all(manifest, tmp_path / "img")
        svg = written[0].read_text()
        assert "V_out (mV)" in svg


class TestCli:
    def test_render_subcommand(self, tmp_path, capsys):
        write(tmp_path / "fig3_iv.csv", IV_BODY)
        manifest = manifest_for(tmp_path, [("fig3_iv.csv", "iv")])
        code = main(["render", "--manifest", str(manifest),
                     "--format", "svg", "--outdir", str(tmp_path / "img")])
        assert code == 0
        assert "fig3_iv.svg" in capsys.readouterr().out

    def test_missing_manifest_fails(self, tmp_path, capsys):
        code = main(["render", "--manifest", str(tmp_path / "nope.json"),
                     "--outdir", str(tmp_path)])
        assert code == 1
        assert "not found" in capsys.readouterr().err
