"""
Versioned entities: the tested project and the test suite, each identified
by a host URL and a version.

A clean checkout is versioned by its HEAD commit. Any other state is
versioned by a SHA-256 over "path<TAB>sha256(bytes)" lines sorted by path,
and remembers the commit it was derived from when there is one.
"""

import hashlib
import logging
import re
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

from project.layout import ProjectLayout
from project.parameters import Parameters
from suites.config import LintConfig

logger = logging.getLogger(__name__)

SUITE_PACKAGES = ("rdfkit", "reasoning", "project", "suites", "reports")
SUITE_SCRIPTS = ("main.py", "lint_orchestrator.py")
SSH_REMOTE = re.compile(r"^(?:ssh://)?git@([^:/]+)[:/](.+)$")


@dataclass(frozen=True)
class VersionDescriptor:
    host_url: str
    version: str
    derived_from_commit: Optional[str] = None

    @property
    def committed(self) -> bool:
        return self.derived_from_commit is None and bool(re.fullmatch(r"[0-9a-f]{40}", self.version))


def hash_files(root: Union[str, Path], paths: Iterable[str]) -> str:
    """Hash of file hashes over the given repository-relative paths"""
    root = Path(root)
    digest = hashlib.sha256()
    for relative in sorted(set(paths)):
        file_hash = hashlib.sha256((root / relative).read_bytes()).hexdigest()
        digest.update(f"{relative}\t{file_hash}\n".encode("utf-8"))
    return digest.hexdigest()


def _git(root: Path, *args: str) -> Optional[str]:
    try:
        result = subprocess.run(['git', *args], capture_output=True, text=True, cwd=root)
    except (OSError, ValueError) as e:
        logger.info("git unavailable: %s", e)
        return None
    if result.returncode != 0:
        return None
    return result.stdout


def get_head_commit(root: Path) -> Optional[str]:
    """HEAD commit hash, None outside a repository or before the first commit"""
    output = _git(root, 'rev-parse', '--verify', '--quiet', 'HEAD')
    commit = output.strip() if output else ""
    return commit or None


def is_clean(root: Path, paths: List[str]) -> bool:
    """No tracked modification and no untracked file among paths"""
    if not paths:
        output = _git(root, 'status', '--porcelain')
    else:
        output = _git(root, 'status', '--porcelain', '--', *paths)
    return output is not None and not output.strip()


def normalize_remote(url: str) -> str:
    """git@host:owner/repo.git becomes https://host/owner/repo"""
    url = url.strip()
    match = SSH_REMOTE.match(url)
    if match:
        url = f"https://{match.group(1)}/{match.group(2)}"
    if url.endswith(".git"):
        url = url[:-4]
    return url.rstrip("/")


def get_host_url(root: Path) -> str:
    output = _git(root, 'remote', 'get-url', 'origin')
    if output and output.strip():
        return normalize_remote(output)
    return root.resolve().as_uri()


def compute_version(root: Union[str, Path], layout: ProjectLayout,
                    parameters: Optional[Parameters] = None) -> VersionDescriptor:
    """HEAD for a clean tree, hash of the scanned files otherwise"""
    root = Path(root)
    parameters = parameters or Parameters()
    host = parameters.repository_url.rstrip("/") if parameters.repository_url else get_host_url(root)
    files = layout.all_files()
    head = get_head_commit(root)
    if head and is_clean(root, files):
        return VersionDescriptor(host, head)
    version = hash_files(root, files)
    if head:
        logger.info("Uncommitted changes: version %s derived from %s", version[:12], head[:12])
    return VersionDescriptor(host, version, head)


def suite_files(package_root: Path = LintConfig.PACKAGE_ROOT) -> List[str]:
    """Source and data files making up the linter itself"""
    files = [name for name in SUITE_SCRIPTS if (package_root / name).is_file()]
    for package in SUITE_PACKAGES:
        files += [path.relative_to(package_root).as_posix() for path in (package_root / package).glob("*.py")]
    files += [path.relative_to(package_root).as_posix() for path in (package_root / "data").glob("*") if path.is_file()]
    return sorted(files)


def compute_suite_version(package_root: Path = LintConfig.PACKAGE_ROOT) -> VersionDescriptor:
    """The linter's own version, always a hash of its files"""
    version = hash_files(package_root, suite_files(package_root))
    return VersionDescriptor(get_host_url(package_root), version, get_head_commit(package_root))
