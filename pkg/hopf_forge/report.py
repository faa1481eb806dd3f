"""
Verification reports: ordered, named entries with a status and evidence.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import polars as pl

from .errors import CertificateInconclusive

logger = logging.getLogger(__name__)

VERDICT_ESTABLISHED = "non-Hopfian witness established"
VERDICT_ALL_PASSED = "all checks passed"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    ASSUMED = "assumed"


@dataclass
class ReportEntry:
    id: str
    description: str
    status: Status
    evidence: str = ""
    elapsed_ms: int = 0
    citation: Optional[str] = None
    error: Optional[Exception] = field(default=None, repr=False, compare=False)

    def to_json(self) -> Dict[str, Any]:
        data = {
            "id": self.id,
            "description": self.description,
            "status": self.status.value,
            "evidence": self.evidence,
            "elapsed_ms": int(self.elapsed_ms),
        }
        if self.citation is not None:
            data["citation"] = self.citation
        return data


Outcome = Tuple[Union[bool, Status], str]


@dataclass
class VerificationReport:
    """
    Entries in the order they were recorded.

    The verdict reads "non-Hopfian witness established" only when a recipe
    produced its witness and no entry other than an assumed one is below pass.
    """

    plan_name: str
    entries: List[ReportEntry] = field(default_factory=list)
    witness_established: bool = False

    def add(self, entry: ReportEntry) -> ReportEntry:
        if any(e.id == entry.id for e in self.entries):
            raise ValueError(f"duplicate report entry id {entry.id!r}")
        if entry.status is Status.ASSUMED and not entry.citation:
            raise ValueError(f"assumed entry {entry.id!r} needs a citation")
        self.entries.append(entry)
        return entry

    def record(self, entry_id: str, description: str, check: Callable[[], Outcome]) -> ReportEntry:
        """
        Run one check and store its outcome.

        ``check`` returns (passed, evidence). CertificateInconclusive becomes
        an inconclusive entry; any other exception becomes a failing entry
        with the exception text as evidence.
        """
        start = time.perf_counter()
        error = None
        try:
            outcome, evidence = check()
            if isinstance(outcome, Status):
                status = outcome
            else:
                status = Status.PASS if outcome else Status.FAIL
        except CertificateInconclusive as exc:
            status, evidence, error = Status.INCONCLUSIVE, str(exc), exc
        except Exception as exc:  # noqa: BLE001
            logger.debug("entry %s raised", entry_id, exc_info=True)
            status, evidence, error = Status.FAIL, f"{type(exc).__name__}: {exc}", exc
        elapsed = int(round((time.perf_counter() - start) * 1000))
        entry = ReportEntry(entry_id, description, status, evidence, elapsed, error=error)
        logger.info("[%s] %s (%d ms)", status.value, entry_id, elapsed)
        return self.add(entry)

    def assume(self, entry_id: str, description: str, citation: str, evidence: str = "") -> ReportEntry:
        return self.add(
            ReportEntry(entry_id, description, Status.ASSUMED, evidence or citation, citation=citation)
        )

    def extend(self, other: "VerificationReport") -> None:
        for entry in other.entries:
            self.add(entry)

    def entry(self, entry_id: str) -> ReportEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise KeyError(entry_id)

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in Status}
        for e in self.entries:
            out[e.status.value] += 1
        return out

    @property
    def passed(self) -> bool:
        return all(e.status in (Status.PASS, Status.ASSUMED) for e in self.entries)

    @property
    def verdict(self) -> str:
        if not self.passed:
            c = self.counts()
            return (
                f"not established: {c['fail']} failing, "
                f"{c['inconclusive']} inconclusive of {len(self.entries)} entries"
            )
        return VERDICT_ESTABLISHED if self.witness_established else VERDICT_ALL_PASSED

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> Dict[str, Any]:
        return {
            "plan_name": self.plan_name,
            "entries": [e.to_json() for e in self.entries],
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {
                "id": [e.id for e in self.entries],
                "status": [e.status.value for e in self.entries],
                "ms": [int(e.elapsed_ms) for e in self.entries],
                "description": [e.description for e in self.entries],
                "evidence": [e.evidence for e in self.entries],
            },
            schema={
                "id": pl.Utf8,
                "status": pl.Utf8,
                "ms": pl.Int64,
                "description": pl.Utf8,
                "evidence": pl.Utf8,
            },
        )

    def render_table(self, evidence_width: int = 60) -> str:
        frame = self.to_frame()
        with pl.Config(
            tbl_rows=-1,
            tbl_cols=-1,
            fmt_str_lengths=max(evidence_width, 20),
            tbl_width_chars=200,
            tbl_hide_dataframe_shape=True,
            tbl_hide_column_data_types=True,
        ):
            return str(frame)


REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "hopf-forge verification report",
    "type": "object",
    "required": ["plan_name", "entries", "verdict"],
    "properties": {
        "plan_name": {"type": "string"},
        "verdict": {"type": "string"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "description", "status", "evidence", "elapsed_ms"],
                "properties": {
                    "id": {"type": "string"},
                    "description": {"type": "string"},
                    "status": {"enum": [s.value for s in Status]},
                    "evidence": {"type": "string"},
                    "elapsed_ms": {"type": "integer"},
                    "citation": {"type": "string"},
                },
            },
        },
    },
}
