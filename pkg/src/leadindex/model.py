"""Domain types and dataset validation.

All types are immutable after construction and safe to share across
threads. Collections inside ValidatedDataset are built once during
validation and treated as read-only from then on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import DataValidationError


class Gender(enum.Enum):
    MALE = "male"
    FEMALE = "female"


class Rank(enum.Enum):
    PROFESSOR = "professor"
    ASSOC_PROFESSOR = "assoc_professor"
    ASSIST_PROFESSOR = "assist_professor"


class IFFallback(enum.Enum):
    """Policy when a publication's (journal, year) has no impact factor."""

    OFF = "off"
    NEAREST_PRIOR_YEAR = "nearest-prior-year"


@dataclass(frozen=True)
class PublicationRecord:
    """One paper attributed to an investigator.

    ``credit_position`` is the investigator's rank in the paper's
    contribution ordering; ``tie_span`` counts the consecutive positions
    (starting there) that contributed equally, 1 meaning no tie. Only
    records with ``is_corresponding`` enter scoring.
    """

    paper_id: str
    pi_id: str
    year: int
    journal: str
    author_count: int
    credit_position: int
    tie_span: int = 1
    is_corresponding: bool = True

    def __post_init__(self):
        if not self.paper_id:
            raise ValueError("paper_id must be non-empty")
        if not self.pi_id:
            raise ValueError("pi_id must be non-empty")
        if not self.journal:
            raise ValueError("journal must be non-empty")
        if self.author_count < 1:
            raise ValueError(f"author_count must be >= 1, got {self.author_count}")
        if not 1 <= self.credit_position <= self.author_count:
            raise ValueError(
                f"credit_position {self.credit_position} out of range "
                f"1..{self.author_count}"
            )
        if self.tie_span < 1:
            raise ValueError(f"tie_span must be >= 1, got {self.tie_span}")
        if self.credit_position + self.tie_span - 1 > self.author_count:
            raise ValueError(
                f"tie_span {self.tie_span} at position {self.credit_position} "
                f"exceeds author_count {self.author_count}"
            )


@dataclass(frozen=True)
class JournalYearIF:
    """Journal impact factor for one calendar year."""

    journal: str
    year: int
    impact_factor: float

    def __post_init__(self):
        if not self.journal:
            raise ValueError("journal must be non-empty")
        if self.impact_factor < 0:
            raise ValueError(f"impact_factor must be >= 0, got {self.impact_factor}")


@dataclass(frozen=True)
class InvestigatorProfile:
    """Demographic and institutional attributes of one investigator.

    ``tier`` is the institutional class (1 = top tier, 2, 3). Funding
    amounts are only comparable within one currency; comparison sites
    enforce that, not this type.
    """

    pi_id: str
    country: str
    tier: int
    gender: Optional[Gender] = None
    birth_year: Optional[int] = None
    rank: Optional[Rank] = None
    total_funding: Optional[float] = None
    currency: Optional[str] = None

    def __post_init__(self):
        if not self.pi_id:
            raise ValueError("pi_id must be non-empty")
        if not self.country:
            raise ValueError("country must be non-empty")
        if self.tier not in (1, 2, 3):
            raise ValueError(f"tier must be 1, 2 or 3, got {self.tier}")
        if self.total_funding is not None:
            if self.total_funding < 0:
                raise ValueError("total_funding must be >= 0")
            if not self.currency:
                raise ValueError("currency required when total_funding is set")


@dataclass(frozen=True)
class GrantRecord:
    """One year of funding to one investigator."""

    pi_id: str
    year: int
    amount: float
    currency: str

    def __post_init__(self):
        if not self.pi_id:
            raise ValueError("pi_id must be non-empty")
        if self.amount < 0:
            raise ValueError(f"amount must be >= 0, got {self.amount}")
        if not self.currency:
            raise ValueError("currency must be non-empty")


@dataclass(frozen=True)
class ScoreCard:
    """Per-investigator metrics for one period.

    Cards with ``paper_count`` 0 are unscored: every metric field is None.
    """

    pi_id: str
    period: tuple[int, int]
    paper_count: int
    o_raw: Optional[float]
    o_weighted: Optional[float]
    t_equiv: Optional[float]
    efficiency: Optional[float]
    leadership: Optional[float]
    l_fund: Optional[float] = None

    def __post_init__(self):
        metrics = (self.o_raw, self.o_weighted, self.t_equiv, self.efficiency, self.leadership)
        if self.paper_count == 0 and any(m is not None for m in metrics):
            raise ValueError("unscored card (paper_count 0) must carry no metrics")
        if self.paper_count > 0 and any(m is None for m in metrics):
            raise ValueError("scored card must carry all metrics")

    @property
    def scored(self) -> bool:
        return self.paper_count > 0


@dataclass(frozen=True)
class ValidatedDataset:
    """Cross-checked analysis inputs with impact factors resolved per paper."""

    publications: tuple[PublicationRecord, ...]
    journal_ifs: Mapping[tuple[str, int], float]
    profiles: Mapping[str, InvestigatorProfile]
    resolved_if: Mapping[str, float]
    warnings: tuple[str, ...] = ()
    _by_pi: Mapping[str, tuple[PublicationRecord, ...]] = field(default_factory=dict, repr=False)

    def corresponding_papers(
        self, pi_id: str, period: Optional[tuple[int, int]] = None
    ) -> list[PublicationRecord]:
        """Scoring-eligible records of one investigator, optionally by period."""
        records = self._by_pi.get(pi_id, ())
        if period is None:
            return list(records)
        start, end = period
        return [r for r in records if start <= r.year <= end]

    @property
    def pi_ids(self) -> list[str]:
        return sorted(self.profiles)


def resolve_impact_factor(
    journal_ifs: Mapping[tuple[str, int], float],
    journal: str,
    year: int,
    fallback: IFFallback = IFFallback.OFF,
) -> Optional[float]:
    """Impact factor for (journal, year) under the fallback policy.

    NEAREST_PRIOR_YEAR falls back to the most recent earlier year with an
    entry for the same journal. Returns None when nothing matches.
    """
    value = journal_ifs.get((journal, year))
    if value is not None or fallback is IFFallback.OFF:
        return value
    prior = [y for (j, y) in journal_ifs if j == journal and y < year]
    if not prior:
        return None
    return journal_ifs[(journal, max(prior))]


def validate_dataset(
    publications: Iterable[PublicationRecord],
    journals: Iterable[JournalYearIF],
    profiles: Iterable[InvestigatorProfile],
    fallback: IFFallback = IFFallback.OFF,
) -> ValidatedDataset:
    """Cross-check records and resolve every publication's impact factor.

    Raises DataValidationError listing every problem found: duplicate
    paper_id or (journal, year) entries, duplicate profiles, publications
    with an unknown pi_id, and publications whose (journal, year) cannot be
    resolved to an impact factor under the fallback policy. The error list
    is sorted, so input order never changes the reported set.

    Non-corresponding publications are kept in the dataset (they never
    enter scoring) and show up in the warnings.
    """
    publications = tuple(publications)
    errors: list[str] = []
    warnings: list[str] = []

    journal_ifs: dict[tuple[str, int], float] = {}
    for j in journals:
        key = (j.journal, j.year)
        if key in journal_ifs:
            errors.append(f"duplicate impact factor entry for {j.journal} {j.year}")
        else:
            journal_ifs[key] = j.impact_factor

    profile_map: dict[str, InvestigatorProfile] = {}
    for p in profiles:
        if p.pi_id in profile_map:
            errors.append(f"duplicate profile for pi_id {p.pi_id}")
        else:
            profile_map[p.pi_id] = p

    resolved: dict[str, float] = {}
    seen_papers: set[str] = set()
    for rec in publications:
        if rec.paper_id in seen_papers:
            errors.append(f"duplicate paper_id {rec.paper_id}")
            continue
        seen_papers.add(rec.paper_id)
        if rec.pi_id not in profile_map:
            errors.append(f"paper {rec.paper_id}: unknown pi_id {rec.pi_id}")
        value = resolve_impact_factor(journal_ifs, rec.journal, rec.year, fallback)
        if value is None:
            errors.append(
                f"paper {rec.paper_id}: no impact factor for {rec.journal} {rec.year}"
            )
        else:
            resolved[rec.paper_id] = value

    if errors:
        raise DataValidationError(sorted(errors))

    non_corresponding = sum(1 for r in publications if not r.is_corresponding)
    if non_corresponding:
        warnings.append(
            f"{non_corresponding} non-corresponding record(s) excluded from scoring"
        )

    by_pi: dict[str, list[PublicationRecord]] = {}
    for rec in publications:
        if rec.is_corresponding:
            by_pi.setdefault(rec.pi_id, []).append(rec)

    return ValidatedDataset(
        publications=publications,
        journal_ifs=journal_ifs,
        profiles=profile_map,
        resolved_if=resolved,
        warnings=tuple(warnings),
        _by_pi={pi: tuple(records) for pi, records in by_pi.items()},
    )


def aggregate_grants(grants: Iterable[GrantRecord]) -> dict[str, tuple[float, str]]:
    """Total funding per investigator; mixed currencies for one PI are an error."""
    totals: dict[str, tuple[float, str]] = {}
    errors: list[str] = []
    for g in grants:
        if g.pi_id in totals:
            amount, currency = totals[g.pi_id]
            if currency != g.currency:
                errors.append(
                    f"pi_id {g.pi_id}: grants in multiple currencies "
                    f"({currency}, {g.currency})"
                )
                continue
            totals[g.pi_id] = (amount + g.amount, currency)
        else:
            totals[g.pi_id] = (g.amount, g.currency)
    if errors:
        raise DataValidationError(sorted(set(errors)))
    return totals


def apply_funding(
    profiles: Iterable[InvestigatorProfile],
    totals: Mapping[str, tuple[float, str]],
) -> list[InvestigatorProfile]:
    """Profiles with grant totals filled in; grant data wins over profile fields."""
    out = []
    for p in profiles:
        if p.pi_id in totals:
            amount, currency = totals[p.pi_id]
            out.append(
                InvestigatorProfile(
                    pi_id=p.pi_id,
                    country=p.country,
                    tier=p.tier,
                    gender=p.gender,
                    birth_year=p.birth_year,
                    rank=p.rank,
                    total_funding=amount,
                    currency=currency,
                )
            )
        else:
            out.append(p)
    return out
