"""SHA-256 object hashing and the SHA3-256 Merkle tree over content chunks."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, List

from .canonical import PAGE_EXCLUSIONS, canonical_serialize, serialize_info, serialize_root
from .errors import EmptyLeafSet
from .pdf import PageView, PdfDocument

#: Content streams are split into groups of this many bytes; each group
#: becomes one Merkle leaf, so a mismatch localizes to a 256-byte region.
CHUNK_SIZE = 256


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha3_256_hex(data: bytes) -> str:
    return hashlib.sha3_256(data).hexdigest()


def chunk_content(content: bytes) -> List[bytes]:
    """Split content into consecutive 256-byte chunks.

    The final chunk may be short; empty content yields a single empty chunk
    so every page always has at least one leaf.
    """
    if not content:
        return [b""]
    return [content[i:i + CHUNK_SIZE] for i in range(0, len(content), CHUNK_SIZE)]


@dataclass
class MerkleTree:
    """Leaf hashes plus all interior levels up to the single root."""

    leaves: List[str]
    levels: List[List[str]]
    root: str


def merkle_build(chunks: List[bytes]) -> MerkleTree:
    """Build the tree: SHA3-256 leaves, pairwise interior nodes.

    Interior nodes hash the concatenation of the two 32-byte child digests;
    an odd node at any level is paired with itself.  A single-leaf tree's
    root is the leaf hash.
    """
    if not chunks:
        raise EmptyLeafSet("cannot build a Merkle tree from zero chunks")
    level = [hashlib.sha3_256(chunk).digest() for chunk in chunks]
    levels = [[digest.hex() for digest in level]]
    while len(level) > 1:
        paired = []
        for i in range(0, len(level), 2):
            left = level[i]
            right = level[i + 1] if i + 1 < len(level) else left
            paired.append(hashlib.sha3_256(left + right).digest())
        level = paired
        levels.append([digest.hex() for digest in level])
    return MerkleTree(leaves=levels[0], levels=levels, root=levels[-1][0])


@dataclass
class PageHashes:
    """Per-page hash triple: canonical-object digest, Merkle root, leaves."""

    object: str
    root: str
    leaves: List[str]

    def as_dict(self) -> dict:
        return {"object": self.object, "root": self.root, "leaves": list(self.leaves)}


@dataclass
class RootHashes:
    """Document-level pair: catalog digest and metadata digest."""

    root: str
    info: str

    def as_dict(self) -> dict:
        return {"root": self.root, "info": self.info}


def compute_page_hashes(doc: PdfDocument, page: PageView) -> PageHashes:
    tree = merkle_build(chunk_content(page.content))
    object_hash = sha256_hex(canonical_serialize(doc, page.dict, PAGE_EXCLUSIONS))
    return PageHashes(object=object_hash, root=tree.root, leaves=tree.leaves)


def compute_root_hashes(doc: PdfDocument, page_hashes: Iterable[PageHashes]) -> RootHashes:
    return RootHashes(
        root=sha256_hex(serialize_root(doc, page_hashes)),
        info=sha256_hex(serialize_info(doc)),
    )
