from pathlib import Path, PurePosixPath
from typing import Iterable, Optional, Union

from src.entities.folder_tree import ROOT, Folder, FolderTree, parent_path


def _relative(file_id: str, source_root: Optional[Union[str, Path]]) -> str:
    path = PurePosixPath(file_id.replace("\\", "/"))
    if source_root is not None and path.is_absolute():
        try:
            return str(path.relative_to(PurePosixPath(Path(source_root).resolve().as_posix())))
        except ValueError:
            pass
    return str(path)


def scan_folders(source_root: Optional[Union[str, Path]], file_ids: Iterable[str]) -> FolderTree:
    """Mirror the directory hierarchy of the files; each file hangs off its immediate folder.

    Absolute file ids under `source_root` are made relative to it first.
    """
    files: dict[str, list[str]] = {ROOT: []}
    children: dict[str, set[str]] = {ROOT: set()}

    for file_id in sorted({_relative(f, source_root) for f in file_ids}):
        folder = parent_path(file_id)
        files.setdefault(folder, []).append(file_id)
        path = folder
        while path != ROOT:
            parent = parent_path(path)
            children.setdefault(path, set())
            children.setdefault(parent, set()).add(path)
            files.setdefault(path, [])
            path = parent

    folders = {
        path: Folder(path, tuple(sorted(children.get(path, ()))), tuple(files[path]))
        for path in sorted(files)
    }
    return FolderTree(folders, ROOT)
