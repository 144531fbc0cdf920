import pytest

from threatfilter.corpus import Label, load_corpus
from threatfilter.synth import MAX_WORDS, CorpusSpec, generate_messages, write_corpus


def test_counts_and_labels():
    spec = CorpusSpec(n_threat=8, n_spam=5, n_legitimate=6, seed=0)
    msgs = generate_messages(spec)
    assert len(msgs) == 19
    assert sum(1 for m in msgs if m.label is Label.THREAT) == 8
    assert sum(1 for m in msgs if m.label is Label.SPAM) == 5
    assert sum(1 for m in msgs if m.label is Label.LEGITIMATE) == 6


def test_deterministic_in_seed():
    spec = CorpusSpec(n_threat=5, n_spam=5, n_legitimate=5, seed=9)
    assert generate_messages(spec) == generate_messages(spec)
    other = CorpusSpec(n_threat=5, n_spam=5, n_legitimate=5, seed=10)
    assert generate_messages(spec) != generate_messages(other)


def test_word_cap_and_synthetic_marker():
    spec = CorpusSpec(n_threat=20, n_spam=20, n_legitimate=20, seed=3)
    for m in generate_messages(spec):
        assert len(m.email.body.split()) <= MAX_WORDS
        assert m.email.header("x-synthetic") is not None
        assert m.email.subject


def test_write_corpus_matches_generate(tmp_path):
    spec = CorpusSpec(n_threat=4, n_spam=3, n_legitimate=2, seed=5)
    counts = write_corpus(tmp_path, spec)
    assert counts == {"threat": 4, "spam": 3, "legitimate": 2}
    loaded = load_corpus(tmp_path)
    generated = generate_messages(spec)
    assert [(m.email.source_id, m.label) for m in loaded] == sorted(
        (m.email.source_id, m.label) for m in generated
    )
    by_id = {m.email.source_id: m for m in generated}
    for m in loaded:
        assert m.email.body == by_id[m.email.source_id].email.body


def test_write_corpus_is_byte_identical_across_runs(tmp_path):
    spec = CorpusSpec(n_threat=3, n_spam=3, n_legitimate=3, seed=7)
    write_corpus(tmp_path / "a", spec)
    write_corpus(tmp_path / "b", spec)
    a_files = sorted((tmp_path / "a").rglob("*.txt"))
    b_files = sorted((tmp_path / "b").rglob("*.txt"))
    assert [p.name for p in a_files] == [p.name for p in b_files]
    for pa, pb in zip(a_files, b_files):
        assert pa.read_bytes() == pb.read_bytes()


def test_both_classes_required():
    with pytest.raises(ValueError, match="both classes"):
        generate_messages(CorpusSpec(n_threat=0, n_spam=5, n_legitimate=5))
    with pytest.raises(ValueError, match="both classes"):
        generate_messages(CorpusSpec(n_threat=5, n_spam=0, n_legitimate=0))
