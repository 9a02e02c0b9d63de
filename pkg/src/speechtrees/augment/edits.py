"""Edit records and their reversal.

Each augmentation appends an :class:`Edit` to the log of the tree it touched.
The ``path`` of an edit is a child-index path that is valid in the tree as it
stood right after that edit, so undoing the log back to front walks the tree
through its earlier states and ends at the source tree(s).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..treebank import (
    Leaf,
    Node,
    Tree,
    delete_at,
    insert_at,
    replace_at,
    subtree_at,
    truncate_to_prefix,
)

VBZ = "VBZ"
REPETITION = "REPETITION"
PARTIAL = "PARTIAL"
FILLER = "FILLER"
COMBINE = "COMBINE"
RESTART = "RESTART"

EDIT_KINDS = (VBZ, REPETITION, PARTIAL, FILLER, COMBINE, RESTART)


@dataclass(frozen=True)
class Edit:
    kind: str
    path: tuple
    payload: object


EditLog = list  # list[Edit]


@dataclass(frozen=True)
class MemberFix:
    """What joining did to one member tree.

    ``punct_path``/``punct`` locate and hold the removed final punctuation
    subtree (relative to the member's root); ``first_word`` is the original
    first word if it was lowercased.
    """

    punct_path: Optional[tuple] = None
    punct: Optional[Tree] = None
    first_word: Optional[str] = None


@dataclass(frozen=True)
class JoinPayload:
    fixes: tuple  # one MemberFix per source tree, in order


@dataclass(frozen=True)
class RestartPayload:
    fixes: tuple  # one MemberFix per source tree; the target's has no punct
    target: int  # position of the truncated tree among the sources
    original: Tree  # the truncated tree before truncation
    kept: int  # number of leaves kept
    hashed: bool  # whether a (# #) leaf was appended


class RevertError(ValueError):
    """An edit log does not match the tree it is being applied to."""


def first_leaf_path(tree: Tree) -> tuple:
    path = []
    while isinstance(tree, Node):
        tree = tree.children[0]
        path.append(0)
    return tuple(path)


def set_word(tree: Tree, path: Sequence[int], word: str) -> Tree:
    leaf = subtree_at(tree, path)
    return replace_at(tree, path, Leaf(leaf.tag, word, synthetic=leaf.synthetic))


def undo_member_fix(tree: Tree, fix: MemberFix) -> Tree:
    if fix.first_word is not None:
        tree = set_word(tree, first_leaf_path(tree), fix.first_word)
    if fix.punct is not None:
        tree = insert_at(tree, fix.punct_path, fix.punct)
    return tree


def _undo_single(tree: Tree, edit: Edit) -> Tree:
    if edit.kind == VBZ:
        leaf = subtree_at(tree, edit.path)
        if not isinstance(leaf, Leaf) or leaf.tag != "VBZ" or leaf.word != "'s":
            raise RevertError(f"no contracted VBZ at {edit.path}")
        return set_word(tree, edit.path, edit.payload)
    if edit.kind in (REPETITION, PARTIAL, FILLER):
        found = subtree_at(tree, edit.path)
        if found != edit.payload:
            raise RevertError(f"{edit.kind} edit at {edit.path} does not match the tree")
        return delete_at(tree, edit.path)
    raise RevertError(f"unknown single-tree edit kind {edit.kind!r}")


def _undo_combine(tree: Tree, payload: JoinPayload) -> list:
    n = len(payload.fixes)
    kids = tree.children
    if len(kids) != 2 * n - 1 or any(kids[i] != Leaf("CC", "and") for i in range(1, len(kids), 2)):
        raise RevertError("tree does not have the shape of a combined group")
    return [undo_member_fix(kids[2 * i], fix) for i, fix in enumerate(payload.fixes)]


def _undo_restart(tree: Tree, payload: RestartPayload) -> list:
    kids = list(tree.children)
    if len(kids) != len(payload.fixes) or kids[payload.target].label != "EDITED_RES":
        raise RevertError("tree does not have the shape of a restart group")
    out = []
    for i, (kid, fix) in enumerate(zip(kids, payload.fixes)):
        if i != payload.target:
            out.append(undo_member_fix(kid, fix))
            continue
        edited = undo_member_fix(kid, MemberFix(first_word=fix.first_word))
        material = list(edited.children)
        if payload.hashed:
            if material[-1] != Leaf("#", "#"):
                raise RevertError("restart log records a (# #) leaf that is missing")
            material.pop()
        expected = truncate_to_prefix(payload.original, payload.kept)
        if tuple(material) != expected.children:
            raise RevertError("EDITED_RES material is not a prefix of the logged source tree")
        out.append(payload.original)
    return out


def revert(tree: Tree, log: Sequence[Edit]) -> list:
    """Undo ``log`` on ``tree``; returns the source tree(s) in order."""
    forest = [tree]
    for edit in reversed(log):
        if len(forest) != 1:
            raise RevertError("edit found before a COMBINE/RESTART in the log")
        if edit.kind == COMBINE:
            forest = _undo_combine(forest[0], edit.payload)
        elif edit.kind == RESTART:
            forest = _undo_restart(forest[0], edit.payload)
        else:
            forest = [_undo_single(forest[0], edit)]
    return forest


def revert_tree(tree: Tree, log: Sequence[Edit]) -> Tree:
    forest = revert(tree, log)
    if len(forest) != 1:
        raise RevertError(f"log reverts to {len(forest)} trees, not one")
    return forest[0]
