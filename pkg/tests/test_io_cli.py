import json
import os

import pytest

from multialg import io as mio
from multialg.cli import main
from multialg.core import InputError, q2
from multialg.real_semigroups import canonical_3
from multialg.ordering_spaces import fan_aos

CORPUS = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, f"{name}.mrs")


class TestFormat:
    def test_parse_serialize_identity_on_corpus_files(self):
        for fname in sorted(os.listdir(CORPUS)):
            path = os.path.join(CORPUS, fname)
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            obj = mio.parse(text)
            again = mio.parse(mio.serialize(obj))
            assert again == obj, fname

    def test_serialization_is_byte_stable(self):
        text = mio.serialize(q2(), name="q2")
        assert mio.serialize(mio.parse(text), name="q2") == text

    def test_committed_corpus_matches_regeneration(self, tmp_path):
        written = mio.write_corpus(str(tmp_path))
        assert written
        for path in written:
            name = os.path.basename(path)
            with open(path, encoding="utf-8") as fh:
                fresh = fh.read()
            with open(os.path.join(CORPUS, name), encoding="utf-8") as fh:
                committed = fh.read()
            assert fresh == committed, name

    def test_every_kind_round_trips(self):
        for obj in (q2(), q2().additive_multigroup(), canonical_3(),
                    fan_aos(2)):
            assert mio.parse(mio.serialize(obj)) == obj

    def test_json_error_carries_position(self):
        with pytest.raises(InputError, match="line 2"):
            mio.parse('{\n  "kind": }')

    def test_unknown_kind(self):
        with pytest.raises(InputError, match="unknown kind"):
            mio.parse('{"kind": "ring"}')

    def test_duplicate_labels(self):
        doc = mio.to_document(q2())
        doc["elements"] = ["1", "1", "0"]
        with pytest.raises(InputError, match="duplicate"):
            mio.from_document(doc)

    def test_empty_add_cell(self):
        doc = mio.to_document(q2())
        doc["add"][0][0] = []
        with pytest.raises(InputError, match="empty addition cell at \\(0,0\\)"):
            mio.from_document(doc)

    def test_ragged_table(self):
        doc = mio.to_document(q2())
        doc["mul"] = doc["mul"][:2]
        with pytest.raises(InputError, match="ragged"):
            mio.from_document(doc)

    def test_out_of_alphabet_entry(self):
        doc = mio.to_document(q2())
        doc["mul"][0][0] = "seven"
        with pytest.raises(InputError, match="unknown element label"):
            mio.from_document(doc)


class TestCli:
    def test_check_passes_on_corpus_q2(self, capsys):
        assert main(["check", corpus_path("q2"), "--level", "all"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_check_fails_on_a_broken_file(self, tmp_path, capsys):
        doc = mio.to_document(q2())
        doc["add"][2][2] = ["-1"]  # 1+1 = {-1}
        path = tmp_path / "broken.mrs"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["check", str(path)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_malformed_file_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.mrs"
        path.write_text("{", encoding="utf-8")
        assert main(["check", str(path)]) == 2
        assert "input error" in capsys.readouterr().err

    def test_missing_file_exits_2(self):
        assert main(["check", "no/such/file.mrs"]) == 2

    def test_jsonl_output_is_machine_readable(self, capsys):
        assert main(["check", corpus_path("q2"), "--format", "jsonl"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        rows = [json.loads(line) for line in lines]
        assert rows[-1]["overall"] is True
        assert all("axiom" in r for r in rows[:-1])

    def test_classify(self, capsys):
        assert main(["classify", corpus_path("q2")]) == 0
        out = capsys.readouterr().out
        assert "multifield: True" in out
        assert "real_reduced_multifield: True" in out

    def test_spec_command(self, capsys):
        assert main(["spec", corpus_path("z6")]) == 0
        out = capsys.readouterr().out
        assert "prime ideals: 2" in out

    def test_sper_and_orderings(self, capsys):
        assert main(["sper", corpus_path("q2xq2")]) == 0
        assert "orderings: 2" in capsys.readouterr().out
        assert main(["orderings", corpus_path("q2")]) == 0
        assert "orderings: 1" in capsys.readouterr().out

    def test_real_check(self, capsys):
        assert main(["real-check", corpus_path("q2")]) == 0
        assert "real: True" in capsys.readouterr().out

    def test_construct_product_quotient_qred(self, tmp_path, capsys):
        out = tmp_path / "p.mrs"
        assert main(["construct", "product", corpus_path("q2"),
                     corpus_path("q2"), "-o", str(out)]) == 0
        assert mio.read_structure(str(out)).size == 9
        out2 = tmp_path / "q.mrs"
        assert main(["construct", "quotient", corpus_path("z6"),
                     "--set", "3", "-o", str(out2)]) == 0
        assert mio.read_structure(str(out2)).size == 3
        out3 = tmp_path / "r.mrs"
        assert main(["construct", "qred", str(out), "-o", str(out3)]) == 0
        assert mio.read_structure(str(out3)).size == 9

    def test_construct_ff_rejects_z6(self, capsys):
        assert main(["construct", "ff", corpus_path("z6")]) == 2

    def test_functor_with_arrow_spelling(self, tmp_path):
        out = tmp_path / "sg.mrs"
        assert main(["functor", "mf->sg", corpus_path("q2"),
                     "-o", str(out)]) == 0
        obj = mio.read_structure(str(out))
        assert mio.kind_of(obj) == "special_group"
        back = tmp_path / "mf.mrs"
        assert main(["functor", "sg-mf", str(out), "-o", str(back)]) == 0
        assert mio.kind_of(mio.read_structure(str(back))) == "multiring"

    def test_functor_kind_mismatch(self):
        assert main(["functor", "rs-mr", corpus_path("q2")]) == 2

    def test_roundtrip_commands(self, capsys):
        for pair, name in (("sg-smf", "sg_z22_trivial"), ("rs-mr", "rs3x3"),
                           ("aos-mf", "aos_fan2"), ("ars-mr", "ars_q2xq2"),
                           ("sg-smf", "q2"), ("rs-mr", "q2xq2"),
                           ("aos-mf", "fan2mf"), ("ars-mr", "q2")):
            assert main(["roundtrip", "--pair", pair, corpus_path(name)]) == 0, \
                (pair, name)

    def test_hom_command(self, capsys):
        assert main(["hom", corpus_path("rs3x3"), corpus_path("rs3")]) == 0
        assert "morphisms: 2" in capsys.readouterr().out

    def test_enumerate_command(self, capsys):
        assert main(["enumerate", "--kind", "multifield", "--order", "3",
                     "--up-to-iso"]) == 0
        out = capsys.readouterr().out
        assert "multifield structures of order <= 3 up to isomorphism: 8" in out

    def test_diagram_q2(self, capsys):
        assert main(["diagram", corpus_path("q2")]) == 0
        out = capsys.readouterr().out
        assert out.count("pass") == 9

    def test_diagram_stops_on_non_reduced(self, capsys):
        assert main(["diagram", corpus_path("z6")]) == 1

    def test_rs_unique3(self, capsys):
        assert main(["rs-unique3"]) == 0
        assert "structures on the sign ternary semigroup: 1" \
            in capsys.readouterr().out

    def test_sample_commands(self, capsys):
        assert main(["sample", "--axiom", "commutativity", "--trials", "300",
                     "--seed", "7"]) == 0
        assert main(["sample", "--axiom", "reversibility", "--trials", "5000",
                     "--seed", "3", "--broken"]) == 1


class TestStability:
    def test_every_corpus_file_passes_check_level_all(self, capsys):
        slow = {"q2xq2", "ars_q2xq2", "rs3x3", "rs_q2xq2", "sg_z23_trivial"}
        for fname in sorted(os.listdir(CORPUS)):
            name = fname[:-4]
            level = "derived" if name in slow else "all"
            code = main(["check", os.path.join(CORPUS, fname),
                         "--level", level])
            capsys.readouterr()
            assert code == 0, fname

    def test_reports_are_deterministic_across_runs(self, capsys):
        outputs = []
        for _ in range(2):
            assert main(["check", corpus_path("q2xq2"), "--level", "axioms",
                         "--format", "jsonl"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_sampling_is_deterministic_across_runs(self, capsys):
        outputs = []
        for _ in range(2):
            main(["sample", "--axiom", "reversibility", "--trials", "500",
                  "--seed", "3", "--broken", "--format", "jsonl"])
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]


class TestEnumerationClosure:
    def test_up_to_iso_is_a_complete_dedupe(self):
        from multialg.enumeration import (enumerate_structures,
                                          multiring_canonical_key)
        labeled = enumerate_structures("multiring", 2, up_to_iso=False)
        reduced = enumerate_structures("multiring", 2, up_to_iso=True)
        assert {multiring_canonical_key(r) for r in labeled} \
            == {multiring_canonical_key(r) for r in reduced}
        assert len({multiring_canonical_key(r) for r in reduced}) \
            == len(reduced)
