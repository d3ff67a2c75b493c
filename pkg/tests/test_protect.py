"""Protection: key insertion, file naming, cleanliness roundtrips."""

from __future__ import annotations

import pytest

from pdfseal import (
    IoError,
    Verdict,
    assess,
    assess_file,
    make_baseline,
    parse,
    protect,
    protect_file,
    write,
)
from pdfseal.protect import PAGE_HASH_KEYS, ROOT_HASH_KEYS


def test_protect_marks_every_page():
    doc = make_baseline(4, 2)
    protected, outcome = protect(doc)
    assert outcome.pages_protected == 4
    assert len(outcome.page_hashes) == 4
    for index in range(4):
        page = protected.page_dict(index)
        for key in PAGE_HASH_KEYS:
            assert key in page
        stored_leaves = page["hashleaves"]
        assert stored_leaves == [
            leaf.encode() for leaf in outcome.page_hashes[index].leaves
        ]
    catalog = protected.catalog()
    for key in ROOT_HASH_KEYS:
        assert key in catalog


def test_protect_key_completeness():
    protected, _ = protect(make_baseline(2, 2))
    catalog = protected.catalog()
    assert "hashobject" not in catalog and "hashleaves" not in catalog
    for index in range(2):
        page = protected.page_dict(index)
        assert "hashinfo" not in page
        assert all(key in page for key in PAGE_HASH_KEYS)


def test_protect_leaves_input_untouched():
    doc = make_baseline(2, 2)
    protect(doc)
    for index in range(2):
        page = doc.page_dict(index)
        assert all(key not in page for key in PAGE_HASH_KEYS)
    assert all(key not in doc.catalog() for key in ROOT_HASH_KEYS)


def test_protect_twice_is_idempotent_in_effect():
    doc = make_baseline(3, 2)
    once, outcome_once = protect(doc)
    twice, outcome_twice = protect(once)
    assert outcome_once.page_hashes == outcome_twice.page_hashes
    assert outcome_once.root_hashes == outcome_twice.root_hashes
    report = assess(parse(write(twice)))
    assert report.verdict is Verdict.CLEAN


def test_protect_zero_pages():
    protected, outcome = protect(make_baseline(0, 0))
    assert outcome.pages_protected == 0
    assert outcome.page_hashes == []
    assert all(key in protected.catalog() for key in ROOT_HASH_KEYS)
    assert assess(parse(write(protected))).verdict is Verdict.CLEAN


def test_protect_file_default_naming(tmp_path):
    source = tmp_path / "Demo.pdf"
    source.write_bytes(write(make_baseline(2, 2)))
    outcome = protect_file(source)
    assert outcome.output_path == tmp_path / "Demo_hash.pdf"
    assert outcome.output_path.exists()
    assert outcome.input_path == source
    assert assess_file(outcome.output_path).verdict is Verdict.CLEAN


def test_protect_file_explicit_output(tmp_path):
    source = tmp_path / "Demo.pdf"
    source.write_bytes(write(make_baseline(1, 1)))
    target = tmp_path / "elsewhere.pdf"
    outcome = protect_file(source, target)
    assert outcome.output_path == target
    assert target.exists()


def test_protect_file_refuses_overwrite(tmp_path):
    source = tmp_path / "Demo.pdf"
    source.write_bytes(write(make_baseline(1, 1)))
    with pytest.raises(IoError):
        protect_file(source, source)
    # The input must be byte-identical afterwards.
    assert source.read_bytes() == write(make_baseline(1, 1))


def test_protect_preserves_content_stream_bytes():
    doc = make_baseline(3, 3, compress=True)
    original = [
        doc.resolve(doc.page_dict(i)["Contents"]).raw for i in range(3)
    ]
    protected, _ = protect(doc)
    reread = parse(write(protected))
    for index in range(3):
        stream = reread.resolve(reread.page_dict(index)["Contents"])
        assert stream.raw == original[index]


@pytest.mark.parametrize("pages", [1, 2, 5])
@pytest.mark.parametrize("compress", [False, True])
@pytest.mark.parametrize("include_info", [False, True])
def test_protect_then_assess_clean(pages, compress, include_info):
    doc = make_baseline(pages, 2, compress=compress, include_info=include_info)
    protected, _ = protect(doc)
    report = assess(parse(write(protected)))
    assert report.verdict is Verdict.CLEAN
    assert report.page_findings == []
    assert not report.root_mismatch and not report.info_mismatch
