"""OEIS reference-sequence management.

Bundled b-file snapshots keep every regression hermetic; refreshing a
snapshot from oeis.org is strictly opt-in.  A b-file is the OEIS
interchange format: one "index value" pair per line, '#' comments and
blank lines ignored, indices contiguous.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import httpx

SEQUENCE_ID_RE = re.compile(r"^A\d{4,7}$")
DEFAULT_URL_TEMPLATE = "https://oeis.org/{id}/b{digits}.txt"

#: Sequences shipped with the package.
BUNDLED_IDS = (
    "A285304",  # sum-from-product P-positions
    "A285847",  # sum-from-product N-positions
    "A286332",  # remove-a-square 2xn Grundy values
    "A274161",  # remove-an-edge N-position cycle sizes
    "A215721",  # domino-covering / path-game P-position sizes
    "A002187",  # path-game Grundy values (shifted by one)
)


class OeisError(Exception):
    """Base class for reference-sequence failures."""


class BFileFormatError(OeisError):
    pass


class SnapshotMissingError(OeisError):
    pass


class OfflineError(OeisError):
    pass


class FetchError(OeisError):
    pass


@dataclass
class BFile:
    sequence_id: str
    entries: list  # ordered (index, value) pairs, contiguous indices

    @property
    def first_index(self) -> int:
        return self.entries[0][0]

    @property
    def last_index(self) -> int:
        return self.entries[-1][0]

    @property
    def values(self) -> list:
        return [v for _, v in self.entries]

    def value_at(self, index: int) -> int:
        first = self.first_index
        if not first <= index <= self.last_index:
            raise IndexError(f"{self.sequence_id} has no entry {index}")
        return self.entries[index - first][1]


@dataclass
class DiffReport:
    sequence_id: str
    compared_range: tuple  # (first, last) computed indices actually compared
    mismatches: list  # (computed index, expected, actual)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def summary(self) -> str:
        lo, hi = self.compared_range
        head = f"{self.sequence_id}: {self.status} over [{lo}, {hi}]"
        if self.mismatches:
            shown = ", ".join(
                f"n={i} expected {e} got {a}" for i, e, a in self.mismatches[:5]
            )
            head += f" ({len(self.mismatches)} mismatches: {shown})"
        return head


def parse_bfile(text: str, sequence_id: str = "") -> BFile:
    """Parse b-file text; comment and blank lines are skipped."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileFormatError(
                f"line {lineno}: expected two fields, got {len(fields)}: {raw!r}"
            )
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise BFileFormatError(f"line {lineno}: non-integer field: {raw!r}") from exc
        if entries and index != entries[-1][0] + 1:
            raise BFileFormatError(
                f"line {lineno}: index {index} not contiguous after {entries[-1][0]}"
            )
        entries.append((index, value))
    if not entries:
        raise BFileFormatError("no entries found")
    return BFile(sequence_id=sequence_id, entries=entries)


def render_bfile(bfile: BFile) -> str:
    return "".join(f"{i} {v}\n" for i, v in bfile.entries)


def compare(
    computed: Sequence[int],
    reference: BFile,
    offset: int = 0,
    computed_start: int = 1,
) -> DiffReport:
    """Element-wise diff of a computed sequence against a reference.

    ``computed[k]`` carries index ``computed_start + k`` and is matched
    against the reference entry at index ``computed_start + k + offset``.
    The shift differs per sequence, so it is always explicit.
    """
    lo = max(computed_start, reference.first_index - offset)
    hi = min(
        computed_start + len(computed) - 1,
        reference.last_index - offset,
    )
    if hi < lo:
        raise OeisError(
            f"no overlap between computed [{computed_start}, "
            f"{computed_start + len(computed) - 1}] and {reference.sequence_id} "
            f"at offset {offset}"
        )
    mismatches = []
    for i in range(lo, hi + 1):
        expected = reference.value_at(i + offset)
        actual = computed[i - computed_start]
        if expected != actual:
            mismatches.append((i, expected, actual))
    return DiffReport(
        sequence_id=reference.sequence_id,
        compared_range=(lo, hi),
        mismatches=mismatches,
    )


def default_snapshot_dir() -> Path:
    override = os.environ.get("IMPARTIAL_OEIS_DIR")
    if override:
        return Path(override)
    return Path(resources.files("impartial") / "oeis_data")


def snapshot_path(sequence_id: str, snapshot_dir: Optional[Path] = None) -> Path:
    directory = Path(snapshot_dir) if snapshot_dir else default_snapshot_dir()
    return directory / f"{sequence_id}.txt"


def load_snapshot(sequence_id: str, snapshot_dir: Optional[Path] = None) -> BFile:
    _check_id(sequence_id)
    path = snapshot_path(sequence_id, snapshot_dir)
    if not path.exists():
        raise SnapshotMissingError(f"no snapshot for {sequence_id} at {path}")
    return parse_bfile(path.read_text(), sequence_id)


def fetch_remote(
    sequence_id: str,
    enabled: bool = False,
    url_template: str = DEFAULT_URL_TEMPLATE,
    snapshot_dir: Optional[Path] = None,
    timeout: float = 30.0,
) -> BFile:
    """Download a b-file and atomically replace the local snapshot.

    Network use must be opted into with ``enabled``; every failure
    (network, HTTP status, parse) leaves the existing snapshot intact.
    """
    _check_id(sequence_id)
    if not enabled:
        raise OfflineError(
            "network fetch is disabled; pass enabled=True (CLI: --fetch) to opt in"
        )
    url = url_template.format(id=sequence_id, digits=sequence_id[1:])
    try:
        response = httpx.get(url, timeout=timeout, follow_redirects=True)
    except httpx.HTTPError as exc:
        raise FetchError(f"fetching {url} failed: {exc}") from exc
    if response.status_code != 200:
        raise FetchError(f"fetching {url} returned HTTP {response.status_code}")
    bfile = parse_bfile(response.text, sequence_id)
    target = snapshot_path(sequence_id, snapshot_dir)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(render_bfile(bfile))
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return bfile


def _check_id(sequence_id: str) -> None:
    if not SEQUENCE_ID_RE.match(sequence_id):
        raise OeisError(f"not an OEIS A-number: {sequence_id!r}")
