"""CLI surface: spec grammar, manifests, batch CSV, analyze, verify-tpp."""

import pytest

from tppb import errors
from tppb.cli import (
    CatalogManifest,
    GroupSpec,
    load_manifest,
    main,
    parse_group_spec,
    realize_group_spec,
    render_group_spec,
)

S3_INVOLUTIONS = ("0,1", "0,3", "0,4")
S3_ROTATIONS = "0,2,5"


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpecGrammar:
    @pytest.mark.parametrize(
        "text",
        [
            "sym:4",
            "alt:5",
            "cyclic:12",
            "dihedral:8",
            "dicyclic:8",
            "elem_abelian:7",
            "elem_abelian:2^3",
            "perm:fixtures/s3.pgens",
            "table:cayley.ctab",
            "product(sym:3,cyclic:4)",
            "product(product(cyclic:2,cyclic:3),sym:3)",
        ],
    )
    def test_round_trip(self, text):
        spec = parse_group_spec(text)
        assert render_group_spec(spec) == text
        assert parse_group_spec(render_group_spec(spec)) == spec

    def test_prime_power_canonical_form(self):
        assert render_group_spec(parse_group_spec("elem_abelian:8")) == "elem_abelian:2^3"
        assert parse_group_spec("elem_abelian:8") == parse_group_spec("elem_abelian:2^3")

    def test_name_matches_render(self):
        spec = parse_group_spec("product(sym:3,cyclic:4)")
        assert spec.name == "product(sym:3,cyclic:4)"

    @pytest.mark.parametrize("text", ["", "   ", "sym", "cyclic:x", "product(sym:3", "product(sym:3,)", "sym:3)", "sym:3 extra"])
    def test_parse_errors(self, text):
        with pytest.raises(errors.ParseError):
            parse_group_spec(text)

    def test_parse_error_carries_position(self):
        try:
            parse_group_spec("product(sym:3")
        except errors.ParseError as exc:
            assert exc.pos > 0
        else:
            pytest.fail("expected ParseError")

    def test_unknown_family(self):
        with pytest.raises(errors.UnknownFamily):
            parse_group_spec("foo:3")

    def test_bad_parameter_caught_at_parse(self):
        with pytest.raises(errors.BadParameter):
            parse_group_spec("dihedral:7")
        with pytest.raises(errors.BadParameter):
            parse_group_spec("elem_abelian:6")


class TestRealize:
    def test_builtin(self):
        assert realize_group_spec(parse_group_spec("sym:4")).order == 24

    def test_product_order(self):
        G = realize_group_spec(parse_group_spec("product(sym:3,cyclic:4)"))
        assert G.order == 24

    def test_perm_path_relative_to_base(self, tmp_path):
        (tmp_path / "s3.pgens").write_text("degree 3\n2 1 3\n2 3 1\n")
        G = realize_group_spec(parse_group_spec("perm:s3.pgens"), base_dir=tmp_path)
        assert G.order == 6

    def test_table_path(self, tmp_path):
        rows = [[(a + b) % 3 for b in range(3)] for a in range(3)]
        lines = ["3"] + [" ".join(map(str, r)) for r in rows]
        (tmp_path / "c3.ctab").write_text("\n".join(lines) + "\n")
        G = realize_group_spec(parse_group_spec("table:c3.ctab"), base_dir=tmp_path)
        assert G.order == 3

    def test_order_limit_enforced(self):
        with pytest.raises(errors.OrderLimitExceeded):
            realize_group_spec(parse_group_spec("sym:3"), order_limit=5)
        with pytest.raises(errors.OrderLimitExceeded):
            realize_group_spec(
                parse_group_spec("product(cyclic:4,cyclic:4)"), order_limit=15
            )


class TestManifest:
    def test_load_with_header_and_comments(self, tmp_path):
        path = tmp_path / "cat.manifest"
        path.write_text(
            "# catalog\norder=6\ns3\tsym:3\nc6\tcyclic:6\n\n# done\n"
        )
        man = load_manifest(path)
        assert isinstance(man, CatalogManifest)
        assert man.declared_order == 6
        assert [name for name, _ in man.entries] == ["s3", "c6"]
        assert man.entries[0][1] == GroupSpec(kind="builtin", family="sym", parameter=3)

    def test_duplicate_names_rejected(self, tmp_path):
        path = tmp_path / "dup.manifest"
        path.write_text("a\tsym:3\na\tcyclic:6\n")
        with pytest.raises(errors.ManifestError):
            load_manifest(path)

    def test_missing_tab_rejected(self, tmp_path):
        path = tmp_path / "bad.manifest"
        path.write_text("just-a-name\n")
        with pytest.raises(errors.ManifestError):
            load_manifest(path)

    def test_bad_spec_reported_with_line(self, tmp_path):
        path = tmp_path / "bad.manifest"
        path.write_text("a\tsym:3\nb\tnope:1\n")
        with pytest.raises(errors.ManifestError) as exc:
            load_manifest(path)
        assert "line 2" in str(exc.value)


class TestBatch:
    def write_manifest(self, tmp_path, body):
        path = tmp_path / "cat.manifest"
        path.write_text(body)
        return path

    def test_small_batch_csv(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "s3\tsym:3\nc4\tcyclic:4\n")
        out = tmp_path / "rows.csv"
        code, stdout, _ = run(["batch", str(man), "--out", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# tppb-csv-v1"
        assert lines[1] == (
            "name,order,is_abelian,subgroup_count,class_count,d3,t,b,h,"
            "t_le_d3,h_le_d3,beta_g,runtime_ms,error"
        )
        assert lines[2] == "s3,6,false,6,3,10,8,8,8,true,true,,,"
        assert lines[3] == "c4,4,true,3,4,4,4,,4,true,true,,,"
        assert "groups=2 t_le_d3=2 h_le_d3=2" in stdout

    def test_exact_beta_column(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "s3\tsym:3\n")
        out = tmp_path / "rows.csv"
        code, _, _ = run(["batch", str(man), "--out", str(out), "--exact-beta"], capsys)
        assert code == 0
        assert out.read_text().splitlines()[2] == "s3,6,false,6,3,10,8,8,8,true,true,8,,"

    def test_declared_order_summary(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "order=6\ns3\tsym:3\nd6\tdihedral:6\n")
        out = tmp_path / "rows.csv"
        code, stdout, _ = run(["batch", str(man), "--out", str(out)], capsys)
        assert code == 0
        assert "order=6 groups=2" in stdout

    def test_declared_order_mismatch_is_entry_error(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "order=6\ns3\tsym:3\nc4\tcyclic:4\n")
        out = tmp_path / "rows.csv"
        code, stdout, _ = run(["batch", str(man), "--out", str(out)], capsys)
        assert code == 1
        lines = out.read_text().splitlines()
        assert lines[2].startswith("s3,6,")
        assert lines[3].startswith("c4,") and "order" in lines[3]
        assert "groups=2 t_le_d3=1 h_le_d3=1" in stdout

    def test_entry_error_recorded_and_continues(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "tiny\tcyclic:3\nhuge\tsym:8\n")
        out = tmp_path / "rows.csv"
        code, _, _ = run(
            ["batch", str(man), "--out", str(out), "--order-limit", "100"], capsys
        )
        assert code == 1
        lines = out.read_text().splitlines()
        assert lines[2].startswith("tiny,3,")
        assert lines[3].startswith("huge,") and "OrderLimitExceeded" in lines[3]

    def test_empty_manifest(self, tmp_path, capsys):
        man = self.write_manifest(tmp_path, "# nothing\n")
        out = tmp_path / "rows.csv"
        code, stdout, _ = run(["batch", str(man), "--out", str(out)], capsys)
        assert code == 0
        assert len(out.read_text().splitlines()) == 2
        assert "groups=0 t_le_d3=0 h_le_d3=0" in stdout

    def test_byte_determinism_and_jobs(self, tmp_path, capsys):
        man = self.write_manifest(
            tmp_path, "s3\tsym:3\nq8\tdicyclic:8\nd12\tdihedral:12\nc9\tcyclic:9\n"
        )
        outputs = []
        for tag, jobs in (("a", "1"), ("b", "1"), ("c", "3")):
            out = tmp_path / f"rows-{tag}.csv"
            code, _, _ = run(
                ["batch", str(man), "--out", str(out), "--jobs", jobs], capsys
            )
            assert code == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_manifest_relative_perm_entry(self, tmp_path, capsys):
        (tmp_path / "s3.pgens").write_text("degree 3\n2 1 3\n2 3 1\n")
        man = self.write_manifest(tmp_path, "file_s3\tperm:s3.pgens\n")
        out = tmp_path / "rows.csv"
        code, _, _ = run(["batch", str(man), "--out", str(out)], capsys)
        assert code == 0
        assert out.read_text().splitlines()[2].startswith("file_s3,6,")


class TestAnalyze:
    def test_s3_exact_beta(self, capsys):
        code, stdout, _ = run(["analyze", "sym:3", "--exact-beta"], capsys)
        assert code == 0
        for needle in (
            "order: 6",
            "degrees: 1 1 2",
            "d3: 10",
            "N: 4",
            "t: 8",
            "b: 8",
            "h: 8",
            "beta_g: 8",
            "beta_witness: 2,3,4",
            "t_le_d3: true",
            "h_le_d3: true",
        ):
            assert needle in stdout

    def test_quaternion_blank_b(self, capsys):
        code, stdout, _ = run(["analyze", "dicyclic:8"], capsys)
        assert code == 0
        assert "b: \n" in stdout
        assert "t: 8" in stdout and "h: 8" in stdout

    def test_abelian(self, capsys):
        code, stdout, _ = run(["analyze", "cyclic:12"], capsys)
        assert code == 0
        assert "h: 12" in stdout and "d3: 12" in stdout

    def test_verbose_candidates(self, capsys):
        code, stdout, _ = run(["analyze", "sym:3", "--verbose"], capsys)
        assert code == 0
        assert "i=4 order=2 core=1 delta=4 left=12 right=8 min=8" in stdout

    def test_bad_spec_exits_nonzero(self, capsys):
        code, _, stderr = run(["analyze", "dihedral:7"], capsys)
        assert code == 2
        assert "error" in stderr.lower()

    def test_env_order_limit(self, capsys, monkeypatch):
        monkeypatch.setenv("TPPB_ORDER_LIMIT", "5")
        code, _, stderr = run(["analyze", "sym:3"], capsys)
        assert code == 2
        assert "limit" in stderr.lower()


class TestVerifyTpp:
    def test_involution_triple_holds(self, capsys):
        s, t, u = S3_INVOLUTIONS
        code, stdout, _ = run(
            ["verify-tpp", "sym:3", "--s", s, "--t", t, "--u", u], capsys
        )
        assert code == 0
        assert "holds" in stdout

    def test_whole_group_with_trivials(self, capsys):
        code, stdout, _ = run(
            ["verify-tpp", "sym:3", "--s", "0,1,2,3,4,5", "--t", "0", "--u", "0"],
            capsys,
        )
        assert code == 0
        assert "holds" in stdout

    def test_failing_triple_prints_witness(self, capsys):
        code, stdout, _ = run(
            ["verify-tpp", "sym:3", "--s", S3_ROTATIONS, "--t", "0,1", "--u", "0,3"],
            capsys,
        )
        assert code == 1
        assert "fails" in stdout and "witness" in stdout

    def test_label_elements(self, capsys):
        code, stdout, _ = run(
            [
                "verify-tpp",
                "sym:3",
                "--s",
                "1 2 3,2 1 3",
                "--t",
                "1 2 3,3 2 1",
                "--u",
                "1 2 3,1 3 2",
            ],
            capsys,
        )
        assert code == 0
        assert "holds" in stdout

    def test_unknown_element(self, capsys):
        code, _, stderr = run(
            ["verify-tpp", "sym:3", "--s", "9", "--t", "0", "--u", "0"], capsys
        )
        assert code == 2
        assert "error" in stderr.lower()

    def test_empty_set_rejected(self, capsys):
        code, _, stderr = run(
            ["verify-tpp", "sym:3", "--s", "", "--t", "0", "--u", "0"], capsys
        )
        assert code == 2
        assert "error" in stderr.lower()


class TestDegrees:
    def test_sym4(self, capsys):
        code, stdout, _ = run(["degrees", "sym:4"], capsys)
        assert code == 0
        for needle in ("order: 24", "classes: 5", "degrees: 1 1 2 3 3", "d3: 64"):
            assert needle in stdout

    def test_abelian(self, capsys):
        code, stdout, _ = run(["degrees", "cyclic:6"], capsys)
        assert code == 0
        assert "degrees: 1 1 1 1 1 1" in stdout
