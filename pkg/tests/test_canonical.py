"""Canonical serialization: grammar, exclusions, determinism properties."""

from __future__ import annotations

import hashlib
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdfseal import (
    PAGE_EXCLUSIONS,
    ROOT_EXCLUSIONS,
    NotADictionary,
    PdfName,
    PdfRef,
    PdfStream,
    canonical_serialize,
    make_baseline,
    parse,
    serialize_info,
    serialize_root,
    write,
)
from pdfseal.hashing import PageHashes

from conftest import assemble_pdf


@pytest.fixture(scope="module")
def doc():
    return make_baseline(0, 0)


def test_dictionary_grammar(doc):
    obj = {"Type": PdfName("Page"), "Rotate": 0}
    assert canonical_serialize(doc, obj) == b"<</Rotate 0 /Type /Page>>"


def test_top_level_exclusion(doc):
    obj = {"Type": PdfName("Page"), "Rotate": 0}
    assert canonical_serialize(doc, obj, {"Rotate"}) == b"<</Type /Page>>"


def test_scalar_encodings(doc):
    obj = {
        "N": None,
        "B": True,
        "C": False,
        "I": -42,
        "R1": 612.0,
        "R2": 0.5,
        "R3": -0.0,
        "S": b"a(b)c\\d",
        "A": [1, 2.5, PdfName("X")],
    }
    assert canonical_serialize(doc, obj) == (
        b"<</A [1 2.5 /X] /B true /C false /I -42 /N null "
        b"/R1 612 /R2 0.5 /R3 0 /S (a\\(b\\)c\\\\d)>>"
    )


def test_stream_encodes_payload_digest(doc):
    stream = PdfStream(dict={"Length": 2}, raw=b"hi")
    digest = hashlib.sha256(b"hi").hexdigest().encode()
    assert canonical_serialize(doc, {"S": stream}) == (
        b"<</S <</Length 2>>stream" + digest + b">>"
    )


def test_reference_cycle_token():
    work = make_baseline(1, 1).copy()
    a: dict = {}
    b: dict = {}
    ref_a = work.add_object(a)
    ref_b = work.add_object(b)
    a[PdfName("Child")] = ref_b
    b[PdfName("Parent")] = ref_a
    assert canonical_serialize(work, ref_a) == b"<</Child <</Parent ref:cycle>>>>"
    # Page tree Parent/Kids links terminate the same way.
    page_bytes = canonical_serialize(work, work.page_dict(0))
    assert page_bytes  # no recursion error


def test_not_a_dictionary(doc):
    with pytest.raises(NotADictionary):
        canonical_serialize(doc, [1, 2, 3])
    with pytest.raises(NotADictionary):
        canonical_serialize(doc, PdfRef(999, 0))  # dangling -> null


def test_key_order_independence_via_writer():
    doc_a = make_baseline(1, 1)
    doc_b = make_baseline(1, 1)
    page_key = doc_b.page_refs[0].key()
    doc_b.objects[page_key] = dict(reversed(list(doc_b.objects[page_key].items())))
    bytes_a, bytes_b = write(doc_a), write(doc_b)
    assert bytes_a != bytes_b  # the two writers laid keys out differently
    parsed_a, parsed_b = parse(bytes_a), parse(bytes_b)
    assert canonical_serialize(
        parsed_a, parsed_a.page_dict(0), PAGE_EXCLUSIONS
    ) == canonical_serialize(parsed_b, parsed_b.page_dict(0), PAGE_EXCLUSIONS)


def test_serialize_info_encoding():
    data = assemble_pdf(
        {
            1: b"<</Type /Catalog /Pages 2 0 R>>",
            2: b"<</Type /Pages /Kids [] /Count 0>>",
            3: b"<</Title (Demo)>>",
        },
        info=3,
    )
    assert serialize_info(parse(data)) == b"<</Title (Demo)>>"


def test_serialize_info_absent():
    doc = make_baseline(1, 1, include_info=False)
    assert serialize_info(doc) == b"noinfo::"


def test_serialize_info_sensitivity():
    base = make_baseline(1, 1)
    edited = base.copy()
    edited.info()[PdfName("Producer")] = b"someone else"
    assert serialize_info(base) != serialize_info(edited)


def _page_hashes(seed: str) -> PageHashes:
    return PageHashes(object=seed * 64, root="b" * 64, leaves=["c" * 64, "d" * 64])


def test_serialize_root_appends_page_records(doc):
    triple = _page_hashes("a")
    data = serialize_root(doc, [triple])
    record = f"page:{'a' * 64}:{'b' * 64}:{'c' * 64},{'d' * 64}".encode()
    assert data.endswith(record)
    assert data.startswith(canonical_serialize(doc, doc.catalog(), ROOT_EXCLUSIONS))


def test_serialize_root_hash_injection(doc):
    one = serialize_root(doc, [_page_hashes("a")])
    other = serialize_root(doc, [_page_hashes("e")])
    assert one != other


def test_serialize_root_zero_pages(doc):
    assert serialize_root(doc, []) == canonical_serialize(
        doc, doc.catalog(), ROOT_EXCLUSIONS
    )


# -- Property tests over random dictionaries --------------------------------

_names = st.text(alphabet=string.ascii_letters + string.digits, min_size=1, max_size=8)
_scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(-10**9, 10**9),
    st.floats(allow_nan=False, allow_infinity=False, width=32),
    st.binary(max_size=12),
    _names.map(PdfName),
)
_values = st.recursive(
    _scalars,
    lambda children: st.one_of(
        st.lists(children, max_size=4),
        st.dictionaries(_names, children, max_size=4),
    ),
    max_leaves=12,
)
_dicts = st.dictionaries(_names, _values, min_size=1, max_size=6)


def _reinsert_reversed(value):
    if isinstance(value, dict):
        return {k: _reinsert_reversed(v) for k, v in reversed(list(value.items()))}
    if isinstance(value, list):
        return [_reinsert_reversed(v) for v in value]
    return value


@settings(max_examples=150)
@given(_dicts)
def test_key_insertion_order_never_matters(random_dict):
    doc = make_baseline(0, 0)
    assert canonical_serialize(doc, random_dict) == canonical_serialize(
        doc, _reinsert_reversed(random_dict)
    )
    assert canonical_serialize(doc, random_dict) == canonical_serialize(doc, random_dict)


@settings(max_examples=150)
@given(_dicts, st.data())
def test_exclusion_soundness(random_dict, data):
    doc = make_baseline(0, 0)
    excluded = "Contents"
    exclusions = frozenset({excluded})
    random_dict.pop(excluded, None)
    base = canonical_serialize(doc, random_dict, exclusions)

    # Inserting, editing, or removing the excluded key never changes output.
    with_key = dict(random_dict)
    with_key[excluded] = b"anything"
    assert canonical_serialize(doc, with_key, exclusions) == base
    with_key[excluded] = [1, 2, 3]
    assert canonical_serialize(doc, with_key, exclusions) == base

    # Editing any included key always changes output.
    if random_dict:
        key = data.draw(st.sampled_from(sorted(random_dict)))
        edited = dict(random_dict)
        edited[key] = [edited[key], b"sentinel"]
        assert canonical_serialize(doc, edited, exclusions) != base
