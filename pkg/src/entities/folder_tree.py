from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping

ROOT = ""


def parent_path(path: str) -> str:
    return path.rsplit("/", 1)[0] if "/" in path else ROOT


@dataclass(frozen=True)
class Folder:
    path: str
    children: tuple[str, ...] = ()
    files: tuple[str, ...] = ()


@dataclass(frozen=True)
class FolderTree:
    """Directory hierarchy keyed by folder path; the root folder has path ''."""

    folders: Mapping[str, Folder] = field(default_factory=lambda: {ROOT: Folder(ROOT)})
    root: str = ROOT

    def __post_init__(self):
        if self.root not in self.folders:
            raise ValueError("folder tree has no root")
        seen: set[str] = set()
        for folder in self.folders.values():
            for f in folder.files:
                if f in seen:
                    raise ValueError(f"file '{f}' appears in two folders")
                seen.add(f)
            for child in folder.children:
                if child not in self.folders:
                    raise ValueError(f"folder '{folder.path}' lists unknown child '{child}'")

    def __getitem__(self, path: str) -> Folder:
        return self.folders[path]

    def __contains__(self, path: str) -> bool:
        return path in self.folders

    @property
    def files(self) -> frozenset[str]:
        return frozenset(f for folder in self.folders.values() for f in folder.files)

    def post_order(self, path: str = None) -> Iterator[Folder]:
        """Children before parents, siblings in path order."""
        start = self.root if path is None else path
        stack = [(start, False)]
        while stack:
            current, expanded = stack.pop()
            if expanded:
                yield self.folders[current]
                continue
            stack.append((current, True))
            for child in sorted(self.folders[current].children, reverse=True):
                stack.append((child, False))

    def subtree_files(self, path: str) -> set[str]:
        return {f for folder in self.post_order(path) for f in folder.files}

    def merge_into_parent(self, path: str) -> "FolderTree":
        """Move a folder's files and child folders into its parent and drop it."""
        if path == self.root:
            raise ValueError("the root folder cannot be merged")
        folder = self.folders[path]
        parent = next(p for p in self.folders.values() if path in p.children)
        folders = dict(self.folders)
        folders[parent.path] = replace(
            parent,
            children=tuple(sorted((set(parent.children) - {path}) | set(folder.children))),
            files=tuple(sorted(set(parent.files) | set(folder.files))),
        )
        del folders[path]
        return replace(self, folders=folders)
