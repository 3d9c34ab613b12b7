"""Best-known [[n, k, d]] quantum code catalog with dominance updates.

One record per key (q, n, k); an update replaces a record only when it
strictly improves the distance, and replaced records are kept in an audit
log.  The store is a single human-diffable JSON file (atomic
write-temp-then-rename); CSV import/export covers the seven schema columns.

JSON record schema:
    {"q": int, "label": str, "n": int, "k": int, "d": int,
     "mds": bool, "ref": str, "witness": object|null}

CSV columns: q,label,n,k,d,mds,ref (header row required).

A bundled seed file ships the published generator-polynomial and derived
rows this package re-verifies; see ``load_seed_records``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
import tempfile
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .css import InvalidParamsError, QuantumParams, is_mds, singleton_defect
from .galois import SUPPORTED_ORDERS, UnsupportedFieldError

MAX_LENGTH = 200

_SEED_RESOURCE = "seed_records.json"


class Verdict(str, enum.Enum):
    INSERTED = "inserted"
    IMPROVED = "improved"
    DOMINATED = "dominated"


class CatalogFormatError(ValueError):
    """Source file is not parseable as a catalog."""


@dataclass(frozen=True)
class CatalogRecord:
    """One best-known entry; `ref` is a free-form citation string or URL."""

    q: int
    n: int
    k: int
    d: int
    label: str = ""
    mds: bool = False
    ref: str = ""
    witness: dict | None = None
    timestamp: str | None = None

    def __post_init__(self):
        if self.q not in SUPPORTED_ORDERS:
            raise UnsupportedFieldError(
                f"record field order {self.q} unsupported; "
                f"supported: {SUPPORTED_ORDERS}"
            )
        if not 1 <= self.n <= MAX_LENGTH:
            raise InvalidParamsError(f"length {self.n} outside 1..{MAX_LENGTH}")
        params = self.params()  # validates ranges and the Singleton bound
        if not self.label:
            object.__setattr__(self, "label", f"{self.q}^2")
        if self.mds != is_mds(params):
            raise InvalidParamsError(
                f"mds flag {self.mds} inconsistent with Singleton defect "
                f"{singleton_defect(params)} for [[{self.n},{self.k},{self.d}]]"
            )

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, self.n, self.k)

    def params(self) -> QuantumParams:
        return QuantumParams(
            q_base=self.q, n=self.n, k=self.k, d=self.d,
            label=self.label or f"{self.q}^2",
        )

    def to_json_obj(self) -> dict:
        return {
            "q": self.q, "label": self.label, "n": self.n, "k": self.k,
            "d": self.d, "mds": self.mds, "ref": self.ref,
            "witness": self.witness,
        }

    @classmethod
    def from_params(
        cls, p: QuantumParams, ref: str = "", witness: dict | None = None
    ) -> "CatalogRecord":
        if witness is None and p.construction is not None:
            witness = p.construction
        return cls(
            q=p.q_base, n=p.n, k=p.k, d=p.d, label=p.label,
            mds=is_mds(p), ref=ref or (p.reference or ""), witness=witness,
        )


def record_from_obj(obj: dict, where: str = "?") -> CatalogRecord:
    """Build a validated record from a parsed JSON object or CSV row."""
    try:
        q = int(obj["q"])
        n = int(obj["n"])
        k = int(obj["k"])
        d = int(obj["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogFormatError(f"{where}: missing or non-integer q/n/k/d") from exc
    mds_raw = obj.get("mds", None)
    if isinstance(mds_raw, str):
        mds = mds_raw.strip().lower() in ("1", "true", "yes", "*")
    elif mds_raw is None:
        mds = (n - k - 2 * (d - 1)) == 0
    else:
        mds = bool(mds_raw)
    witness = obj.get("witness")
    if isinstance(witness, str) and witness:
        try:
            witness = json.loads(witness)
        except json.JSONDecodeError:
            witness = {"text": witness}
    if witness == "":
        witness = None
    return CatalogRecord(
        q=q, n=n, k=k, d=d,
        label=str(obj.get("label") or f"{q}^2"),
        mds=mds,
        ref=str(obj.get("ref") or ""),
        witness=witness,
        timestamp=obj.get("timestamp"),
    )


class Catalog:
    """In-memory catalog with single-writer update semantics."""

    def __init__(self):
        self._records: dict[tuple[int, int, int], CatalogRecord] = {}
        self.audit: list[CatalogRecord] = []  # records displaced by improvements
        self.last_ingest_diagnostics: list[str] = []

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self.records())

    def records(self) -> list[CatalogRecord]:
        return [self._records[key] for key in sorted(self._records)]

    def snapshot(self) -> dict[tuple[int, int, int], int]:
        """(q, n, k) -> d map for read-only search comparisons."""
        return {key: rec.d for key, rec in self._records.items()}

    # -- updates -------------------------------------------------------------

    def update_if_better(self, rec: CatalogRecord) -> Verdict:
        old = self._records.get(rec.key)
        if old is None:
            self._records[rec.key] = rec
            return Verdict.INSERTED
        if rec.d > old.d:
            self.audit.append(old)
            self._records[rec.key] = rec
            return Verdict.IMPROVED
        return Verdict.DOMINATED

    # -- queries ---------------------------------------------------------------

    @staticmethod
    def _check_q(q: int) -> None:
        if q not in SUPPORTED_ORDERS:
            raise UnsupportedFieldError(
                f"field order {q} unsupported; supported: {SUPPORTED_ORDERS}"
            )

    def query_exact(self, q: int, n: int, k: int) -> CatalogRecord | None:
        self._check_q(q)
        return self._records.get((q, n, k))

    def query_by_distance(self, q: int, n: int, d: int) -> list[CatalogRecord]:
        """All records at (q, n) whose stored distance is >= d."""
        self._check_q(q)
        return [
            rec for key, rec in sorted(self._records.items())
            if key[0] == q and key[1] == n and rec.d >= d
        ]

    def query_range(
        self,
        q: int,
        n_range: tuple[int, int],
        d_range: tuple[int, int],
    ) -> list[CatalogRecord]:
        """Records with n and d inside closed ranges, sorted by (n, k)."""
        self._check_q(q)
        n_lo, n_hi = n_range
        d_lo, d_hi = d_range
        return [
            rec for key, rec in sorted(self._records.items())
            if key[0] == q
            and n_lo <= rec.n <= n_hi
            and d_lo <= rec.d <= d_hi
        ]

    # -- ingest / export ---------------------------------------------------------

    def ingest(self, source: str | Path | Iterable[dict]) -> int:
        """Load records from a JSON or CSV file (or parsed objects).

        Invalid rows are rejected with line-numbered diagnostics in
        ``last_ingest_diagnostics``; duplicates resolve by keeping larger d.
        Returns the number of records that survived validation.
        """
        self.last_ingest_diagnostics = []
        if isinstance(source, (str, Path)):
            objs = list(_read_records_file(Path(source)))
        else:
            objs = [(f"record {i}", obj) for i, obj in enumerate(source, 1)]
        count = 0
        for where, obj in objs:
            try:
                rec = record_from_obj(obj, where)
            except (CatalogFormatError, InvalidParamsError,
                    UnsupportedFieldError, ValueError) as exc:
                self.last_ingest_diagnostics.append(f"{where}: rejected: {exc}")
                continue
            self.update_if_better(rec)
            count += 1
        return count

    def export(self, target: str | Path, fmt: str | None = None) -> int:
        """Write the catalog; round-trips through ingest exactly (JSON keeps
        witnesses, CSV carries the seven schema columns)."""
        path = Path(target)
        if fmt is None:
            fmt = "csv" if path.suffix.lower() == ".csv" else "json"
        recs = self.records()
        if fmt == "json":
            payload = json.dumps(
                [r.to_json_obj() for r in recs], indent=1, sort_keys=True
            )
            _atomic_write(path, payload + "\n")
        elif fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf)
            w.writerow(["q", "label", "n", "k", "d", "mds", "ref"])
            for r in recs:
                w.writerow([r.q, r.label, r.n, r.k, r.d,
                            "true" if r.mds else "false", r.ref])
            _atomic_write(path, buf.getvalue())
        else:
            raise ValueError(f"unknown export format {fmt!r}")
        return len(recs)

    save = export

    @classmethod
    def load(cls, path: str | Path) -> "Catalog":
        cat = cls()
        cat.ingest(path)
        return cat

    def __eq__(self, other) -> bool:
        if not isinstance(other, Catalog):
            return NotImplemented
        mine = [r.to_json_obj() for r in self.records()]
        theirs = [r.to_json_obj() for r in other.records()]
        return mine == theirs


def _read_records_file(path: Path) -> list[tuple[str, dict]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogFormatError(f"{path}: cannot read: {exc}") from exc
    name = path.name
    if path.suffix.lower() == ".csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        required = {"q", "n", "k", "d"}
        if rows and not required <= set(rows[0].keys()):
            raise CatalogFormatError(
                f"{name}: CSV header must include q,n,k,d"
            )
        return [(f"{name}:{i}", row) for i, row in enumerate(rows, 2)]
    stripped = text.strip()
    if not stripped:
        return []
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError:
        # newline-delimited JSON records
        out = []
        for i, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append((f"{name}:{i}", json.loads(line)))
            except json.JSONDecodeError as exc:
                raise CatalogFormatError(
                    f"{name}:{i}: not valid JSON: {exc}"
                ) from exc
        return out
    if isinstance(data, dict) and "records" in data:
        data = data["records"]
    if not isinstance(data, list):
        raise CatalogFormatError(f"{name}: expected a JSON array of records")
    return [(f"{name}[{i}]", obj) for i, obj in enumerate(data)]


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def seed_records_path() -> Path:
    """Filesystem path of the bundled seed fixture."""
    return Path(str(resources.files("polyqec.data") / _SEED_RESOURCE))


def load_seed_records() -> list[CatalogRecord]:
    """Validated records from the bundled seed fixture."""
    text = (resources.files("polyqec.data") / _SEED_RESOURCE).read_text("utf-8")
    data = json.loads(text)
    return [record_from_obj(obj, f"seed[{i}]") for i, obj in enumerate(data)]


def seed_catalog() -> Catalog:
    """A catalog pre-loaded with the bundled seed records."""
    cat = Catalog()
    for rec in load_seed_records():
        cat.update_if_better(rec)
    return cat
