import io

import pytest
from hypothesis import given, strategies as st

from zipfabbrev.ingest import ParseError, RawToken, parse_alignment, parse_conllu, parse_typelist, write_typelist

CONLLU = """# sent_id = 1
# text = I can't go.
1\tI\tI\tPRON\t_\t_\t3\tnsubj\t_\t_
2-3\tcan't\t_\t_\t_\t_\t_\t_\t_\t_
2\tca\tcan\tAUX\t_\t_\t3\taux\t_\t_
3\tn't\tnot\tPART\t_\t_\t4\tadvmod\t_\t_
4\tgo\tgo\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No
4.1\tgone\t_\tVERB\t_\t_\t_\t_\t_\t_
5\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_

1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_
"""


def test_conllu_single_line():
    toks = list(parse_conllu("1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"))
    assert toks == [RawToken("The", pos="DET")]


def test_conllu_comment_skipped():
    assert list(parse_conllu("# text = Hello.\n")) == []


def test_conllu_multiword_range_skipped():
    text = "3-4\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n3\tde\tde\tADP\t_\t_\t5\tcase\t_\t_\n4\tel\tel\tDET\t_\t_\t5\tdet\t_\t_\n"
    assert [t.form for t in parse_conllu(text)] == ["de", "el"]


def test_conllu_token_count_matches_word_lines():
    toks = list(parse_conllu(CONLLU))
    word_lines = [
        ln for ln in CONLLU.splitlines()
        if ln and not ln.startswith("#") and ln.split("\t")[0].isdigit()
    ]
    assert len(toks) == len(word_lines) == 6
    assert [t.form for t in toks] == ["I", "ca", "n't", "go", ".", "Hi"]
    assert toks[4].pos == "PUNCT"


def test_conllu_errors():
    with pytest.raises(ParseError, match="line 2"):
        list(parse_conllu("# c\n1\tbad\tline\n"))
    with pytest.raises(ParseError, match="non-integer"):
        list(parse_conllu("x\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"))


def test_alignment_rows():
    text = "utt\tform\tstart\tend\nu1\tcat\t0.10\t0.45\nu1\t<unk>\t0\t0.2\nu1\t\t0.2\t0.3\n"
    cat, unk, null = parse_alignment(text)
    assert cat.form == "cat" and cat.duration_s == pytest.approx(0.35)
    assert unk.is_unknown
    assert null.is_null


def test_alignment_errors():
    with pytest.raises(ParseError, match="end before start, row 2"):
        list(parse_alignment("utt\tform\tstart\tend\nu1\tdog\t0.5\t0.4\n"))
    with pytest.raises(ParseError, match="row 3"):
        list(parse_alignment("utt\tform\tstart\tend\nu1\tdog\t0.1\t0.4\nu1\tx\tabc\t1\n"))


@given(st.lists(st.tuples(st.floats(0, 100), st.floats(0, 10)), max_size=20))
def test_alignment_durations_nonnegative(rows):
    text = "utt\tform\tstart\tend\n" + "".join(f"u\tw\t{s!r}\t{s + d!r}\n" for s, d in rows)
    assert all(t.duration_s >= 0 for t in parse_alignment(text))


def test_typelist_table1():
    lex = parse_typelist("form,frequency,length\nx,100,2\ny,20,1\nz,5,3\n")
    assert (lex.n, lex.T) == (3, 125)
    assert lex.unit.value == "mapped"


def test_typelist_tab_delimited_and_zero_length():
    lex = parse_typelist("form\tfrequency\tlength\na\t1\t0\n")
    assert (lex.n, lex.T) == (1, 1)
    assert lex.records[0].length == 0


@pytest.mark.parametrize(
    "body, message",
    [
        ("a,1,1\na,2,1\n", "duplicate form a, row 3"),
        ("a,0,1\n", "nonpositive frequency 0, row 2"),
        ("a,1,-1\n", "negative length -1.0, row 2"),
    ],
)
def test_typelist_errors(body, message):
    with pytest.raises(ParseError, match=message):
        parse_typelist("form,frequency,length\n" + body)


@given(
    st.dictionaries(
        st.text(alphabet="abcxyzé'", min_size=1, max_size=6),
        st.tuples(st.integers(1, 10**6), st.floats(0, 50, allow_nan=False)),
        min_size=1,
        max_size=20,
    ),
    st.sampled_from([",", "\t"]),
)
def test_typelist_roundtrip(table, delim):
    lex = parse_typelist("form,frequency,length\n" + "".join(f"{k},{f},{l!r}\n" for k, (f, l) in table.items()))
    buf = io.StringIO()
    write_typelist(lex, buf, delim)
    assert parse_typelist(buf.getvalue()) == lex
