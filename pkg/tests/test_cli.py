import csv
import io
import json

import pytest

from collgram.cli import main
from collgram.index import build_index, load_index
from collgram.tokens import SENTENCE_BREAK, tokenize_plain


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def index_file(tmp_path, capsys):
    corpus = write(tmp_path / "ref.txt", "the cat sat on the mat . the cat ran\n\nthe dog sat on the cat")
    path = tmp_path / "ref.idx"
    assert run(capsys, "index", "build", corpus, "-o", path)[0] == 0
    return path


class TestIndexBuild:
    def test_four_tokens(self, tmp_path, capsys):
        corpus = write(tmp_path / "c.txt", "a b a b")
        code, out, _ = run(capsys, "index", "build", corpus, "-o", tmp_path / "c.idx")
        assert code == 0 and "tokens=4 bigrams=3" in out
        idx = load_index(tmp_path / "c.idx")
        assert (idx.total_tokens, idx.total_bigram_tokens) == (4, 3)

    def test_no_files_is_usage_error(self, tmp_path, capsys):
        assert run(capsys, "index", "build", "-o", tmp_path / "x.idx")[0] == 1

    def test_two_files_break_between(self, tmp_path, capsys):
        f1 = write(tmp_path / "1.txt", "a b c")
        f2 = write(tmp_path / "2.txt", "d a b")
        run(capsys, "index", "build", f1, f2, "-o", tmp_path / "two.idx")
        joined = build_index(tokenize_plain("a b c") + [SENTENCE_BREAK] + tokenize_plain("d a b"))
        idx = load_index(tmp_path / "two.idx")
        assert idx.unigram_counts == joined.unigram_counts
        assert idx.bigram_counts == joined.bigram_counts
        assert ("c", "d") not in idx.bigram_counts

    def test_unreadable_file(self, tmp_path, capsys):
        assert run(capsys, "index", "build", tmp_path / "missing.txt", "-o", tmp_path / "x.idx")[0] == 2

    def test_empty_corpus(self, tmp_path, capsys):
        f = write(tmp_path / "p.txt", ". , !")
        code, _, err = run(capsys, "index", "build", f, "-o", tmp_path / "x.idx")
        assert code == 2 and "empty corpus" in err

    def test_env_default(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("COLLGRAM_INDEX", str(tmp_path / "env.idx"))
        f = write(tmp_path / "c.txt", "a b")
        assert run(capsys, "index", "build", f)[0] == 0
        assert (tmp_path / "env.idx").exists()

    def test_tagged_and_min_count(self, tmp_path, capsys):
        f = write(tmp_path / "v.tsv", "the\tAT\ncat\tNN1\n.\t.\nthe\tAT\ncat\tNN1\nsat\tVVD\n")
        run(capsys, "index", "build", f, "--tagged", "vertical", "--min-count", "2", "-o", tmp_path / "v.idx")
        idx = load_index(tmp_path / "v.idx")
        assert dict(idx.bigram_counts) == {("the", "cat"): 2} and idx.min_count == 2

    def test_bad_tagged_line(self, tmp_path, capsys):
        f = write(tmp_path / "v.tsv", "the\tAT\ncatNN1\n")
        code, _, err = run(capsys, "index", "build", f, "--tagged", "vertical", "-o", tmp_path / "v.idx")
        assert code == 2 and "line 2" in err

    def test_info(self, index_file, capsys):
        code, out, _ = run(capsys, "index", "info", index_file, "--format", "json")
        info = json.loads(out)
        assert code == 0 and info["tokens"] == 15 and info["version"] == 1

    def test_info_corrupt(self, index_file, capsys):
        index_file.write_bytes(index_file.read_bytes()[:-10])
        assert run(capsys, "index", "info", index_file)[0] == 2


class TestProfile:
    def test_rows_match_library(self, index_file, tmp_path, capsys):
        texts = [write(tmp_path / f"t{i}.txt", t) for i, t in enumerate(["the cat sat", "on the mat", "a dog"])]
        code, out, _ = run(capsys, "profile", "--index", index_file, "--mi-threshold", "0.5",
                           "--t-threshold", "0.5", *texts)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [r["text_id"] for r in rows] == ["t0", "t1", "t2"]
        assert list(rows[0]) == ["text_id", "n_bigrams", "n_attested", "n_high_mi", "n_high_t",
                                 "pct_high_mi", "pct_high_t"]
        from collgram import Thresholds, profile_text
        idx = load_index(index_file)
        p = profile_text("t0", tokenize_plain("the cat sat"), idx, Thresholds(0.5, 0.5))
        assert rows[0]["n_high_mi"] == str(p.n_high_mi)
        assert rows[0]["pct_high_mi"] == f"{p.pct_high_mi:.2f}"

    def test_single_word_text(self, index_file, tmp_path, capsys):
        t = write(tmp_path / "one.txt", "cat")
        code, out, err = run(capsys, "profile", "--index", index_file, t)
        row = list(csv.DictReader(io.StringIO(out)))[0]
        assert code == 0 and row["pct_high_mi"] == "" and row["pct_high_t"] == ""
        assert "no bigrams" in err and "untagged" in err

    def test_manifest_groups(self, index_file, tmp_path, capsys):
        for g in ("human", "mt"):
            (tmp_path / g).mkdir()
            write(tmp_path / g / "a.txt", "the cat sat")
            write(tmp_path / g / "b.txt", "the dog ran")
        manifest = write(tmp_path / "m.tsv", "".join(
            f"{t}\t{g}\t{g}/{t}.txt\n" for g in ("human", "mt") for t in ("a", "b")))
        code, out, _ = run(capsys, "profile", "--index", index_file, "--manifest", manifest)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [(r["text_id"], r["group"]) for r in rows] == [
            ("a", "human"), ("b", "human"), ("a", "mt"), ("b", "mt")]

    def test_json_full_precision(self, index_file, tmp_path, capsys):
        t = write(tmp_path / "t.txt", "the cat sat on the dog")
        _, out, _ = run(capsys, "profile", "--index", index_file, "--format", "json",
                        "--mi-threshold", "0", "--t-threshold", "0", t)
        (row,) = json.loads(out)
        assert row["pct_high_mi"] == pytest.approx(100 * row["n_high_mi"] / row["n_bigrams"], rel=1e-15)

    def test_markdown(self, index_file, tmp_path, capsys):
        t = write(tmp_path / "t.txt", "the cat")
        _, out, _ = run(capsys, "profile", "--index", index_file, "--format", "markdown", t)
        assert out.startswith("| text_id | n_bigrams |")

    def test_fold_mismatch(self, index_file, tmp_path, capsys):
        t = write(tmp_path / "t.txt", "the cat")
        code, _, err = run(capsys, "profile", "--index", index_file, "--fold-case", "off", t)
        assert code == 2 and "fold_case" in err

    def test_missing_text(self, index_file, tmp_path, capsys):
        assert run(capsys, "profile", "--index", index_file, tmp_path / "nope.txt")[0] == 2

    def test_no_index(self, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("COLLGRAM_INDEX", raising=False)
        t = write(tmp_path / "t.txt", "the cat")
        assert run(capsys, "profile", t)[0] == 1

    def test_env_index(self, index_file, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("COLLGRAM_INDEX", str(index_file))
        t = write(tmp_path / "t.txt", "the cat")
        assert run(capsys, "profile", t)[0] == 0

    def test_bad_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["profile", "--denominator", "some"])
        assert exc.value.code == 1


def profile_csv(path, rows, group=None):
    header = "text_id,n_bigrams,n_attested,n_high_mi,n_high_t,pct_high_mi,pct_high_t" + (",group" if group else "")
    lines = [header]
    for tid, mi, t in rows:
        line = f"{tid},100,90,0,0,{'' if mi is None else mi},{'' if t is None else t}"
        lines.append(line + (f",{group}" if group else ""))
    return write(path, "\n".join(lines) + "\n")


class TestCompare:
    def test_two_groups(self, tmp_path, capsys):
        a = profile_csv(tmp_path / "a.csv", [(f"t{i}", 10 + i % 3, 50 + i % 2) for i in range(10)])
        b = profile_csv(tmp_path / "b.csv", [(f"t{i}", 12 + i % 2, 48 + i % 3) for i in range(10)])
        code, out, _ = run(capsys, "compare", f"A={a}", f"B={b}", "--format", "json")
        report = json.loads(out)
        assert code == 0
        (cell,) = report["comparisons"]["high_mi"]
        assert (cell["row"], cell["col"]) == ("B", "A") and cell["mean_diff"] > 0

    def test_identical_groups_degenerate(self, tmp_path, capsys):
        a = profile_csv(tmp_path / "a.csv", [(f"t{i}", i, i) for i in range(5)])
        code, out, _ = run(capsys, "compare", f"A={a}", f"B={a}")
        assert code == 3 and "†" in out

    def test_misaligned_ids(self, tmp_path, capsys):
        a = profile_csv(tmp_path / "a.csv", [("x", 1, 1), ("y", 2, 2)])
        b = profile_csv(tmp_path / "b.csv", [("x", 1, 1), ("z", 2, 2)])
        code, _, err = run(capsys, "compare", f"A={a}", f"B={b}")
        assert code == 2 and "A:z" in err and "B:y" in err

    def test_group_column_file(self, tmp_path, capsys):
        rows = [(f"t{i}", 10 + i % 4, 50 + i % 3) for i in range(8)]
        f = tmp_path / "all.csv"
        text = profile_csv(tmp_path / "h.csv", rows, "human").read_text()
        text += "".join(profile_csv(tmp_path / "m.csv", [(t, mi + 1 + (i % 2), tt) for i, (t, mi, tt) in enumerate(rows)],
                                    "mt").read_text().splitlines(True)[1:])
        write(f, text)
        code, out, _ = run(capsys, "compare", f, "--groups", "human,mt", "--format", "csv")
        assert code == 0 and "high_mi,mt,human," in out

    def test_unknown_group_order(self, tmp_path, capsys):
        a = profile_csv(tmp_path / "a.csv", [("x", 1, 1), ("y", 2, 2)])
        assert run(capsys, "compare", f"A={a}", f"B={a}", "--groups", "A,C")[0] == 1

    def test_excluded_listed(self, tmp_path, capsys):
        a = profile_csv(tmp_path / "a.csv", [("x", None, None), ("y", 2, 2), ("z", 3, 1), ("w", 5, 5)])
        b = profile_csv(tmp_path / "b.csv", [("x", 1, 1), ("y", 1, 3), ("z", 1, 1), ("w", 2, 2)])
        code, out, err = run(capsys, "compare", f"A={a}", f"B={b}", "--format", "json")
        assert json.loads(out)["excluded_texts"] == ["A:x"] and "A:x" in err
