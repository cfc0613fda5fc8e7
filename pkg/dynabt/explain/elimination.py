"""
Elimination Sets

Eliminating explanations (value, culprit set) and the per-variable elimination sets
that every engine maintains, with the merge, culprit-union and pruning algebra.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from ..core import Problem


@dataclass(frozen=True)
class Explanation:
    """
    The owning variable cannot take `value` while the culprits keep their values.

    `learned` marks explanations installed at a backjump. It does not take part
    in equality, so replayed sets compare equal to the engine's own.
    """
    value: str
    culprits: FrozenSet[str] = frozenset()
    learned: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, value: str, culprits: Iterable[str] = (), learned: bool = False) -> 'Explanation':
        return cls(value, frozenset(culprits), learned)

    def involves(self, name: str) -> bool:
        return name in self.culprits


class EliminationSet:
    """
    Eliminations for one variable: at most one explanation per value.

    Entries iterate in domain order so traces and pruning are deterministic.
    """

    def __init__(self, owner: str, domain: Tuple[str, ...],
                 entries: Iterable[Explanation] = ()):
        self.owner = owner
        self.domain = domain
        self._rank = {value: k for k, value in enumerate(domain)}
        self._entries: Dict[str, Explanation] = {}
        for explanation in entries:
            self.install(explanation)

    @classmethod
    def for_variable(cls, problem: Problem, owner: str) -> 'EliminationSet':
        return cls(owner, problem.domains[owner])

    def get(self, value: str) -> Optional[Explanation]:
        return self._entries.get(value)

    def install(self, explanation: Explanation) -> None:
        """Set the entry for explanation.value unconditionally"""
        if explanation.value not in self._rank:
            raise ValueError(f"value '{explanation.value}' is not in the domain of '{self.owner}'")
        if self.owner in explanation.culprits:
            raise ValueError(f"explanation for '{self.owner}' cites the variable itself")
        self._entries[explanation.value] = explanation

    def absorb(self, fresh: Iterable[Explanation]) -> List[Explanation]:
        """
        Merge mechanism output into this set in place.

        A value without an entry takes the fresh explanation; otherwise the
        smaller culprit set wins and ties keep the existing entry, whether
        or not it was learned. Returns the entries that changed, in domain
        order.
        """
        changed = []
        for explanation in fresh:
            current = self._entries.get(explanation.value)
            if current is None or len(explanation.culprits) < len(current.culprits):
                self.install(explanation)
                changed.append(explanation)
        changed.sort(key=lambda e: self._rank[e.value])
        return changed

    def learn(self, explanation: Explanation) -> None:
        """Install a backjump explanation, overriding any entry for its value"""
        if not explanation.learned:
            explanation = Explanation(explanation.value, explanation.culprits, learned=True)
        self.install(explanation)

    def discard(self, value: str) -> Optional[Explanation]:
        return self._entries.pop(value, None)

    def drop_involving(self, name: str) -> List[Explanation]:
        """Remove every entry citing `name`; returns the removed entries in domain order"""
        removed = [e for e in self if name in e.culprits]
        for explanation in removed:
            del self._entries[explanation.value]
        return removed

    def clear(self) -> None:
        self._entries.clear()

    def eliminated(self) -> Set[str]:
        """Values that currently have an explanation"""
        return set(self._entries)

    def remaining(self) -> List[str]:
        """Domain values with no entry, in domain order"""
        return [value for value in self.domain if value not in self._entries]

    def culprit_union(self) -> Set[str]:
        result: Set[str] = set()
        for explanation in self._entries.values():
            result.update(explanation.culprits)
        return result

    def is_dead_end(self) -> bool:
        return len(self._entries) == len(self.domain)

    def copy(self) -> 'EliminationSet':
        clone = EliminationSet(self.owner, self.domain)
        clone._entries = dict(self._entries)
        return clone

    def as_dict(self) -> Dict[str, FrozenSet[str]]:
        return {e.value: e.culprits for e in self}

    def __iter__(self) -> Iterator[Explanation]:
        return iter(sorted(self._entries.values(), key=lambda e: self._rank[e.value]))

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, value: object) -> bool:
        return value in self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EliminationSet):
            return NotImplemented
        return self.owner == other.owner and self._entries == other._entries

    def __repr__(self) -> str:
        inner = ', '.join(f"{e.value}→{{{','.join(sorted(e.culprits))}}}" for e in self)
        return f"EliminationSet({self.owner}: {inner})"


def merge(existing: EliminationSet, fresh: Iterable[Explanation]) -> EliminationSet:
    """`existing` absorbing `fresh` as a new set; see EliminationSet.absorb for the conciseness rule"""
    merged = existing.copy()
    merged.absorb(fresh)
    return merged


def eliminated_values(elimination: EliminationSet) -> Set[str]:
    return elimination.eliminated()


def culprit_union(elimination: EliminationSet) -> Set[str]:
    """The set E of a dead end: every variable appearing in an explanation"""
    return elimination.culprit_union()


def prune_involving(all_sets: Mapping[str, EliminationSet], name: str,
                    order: Optional[Iterable[str]] = None) -> List[Tuple[str, Explanation]]:
    """
    Remove every explanation citing `name` from every elimination set.

    Sets are visited in `order` (declaration order by convention) and the
    removed (owner, explanation) pairs are returned in that order; the count
    of removals is their length.
    """
    removed: List[Tuple[str, Explanation]] = []
    for owner in (order if order is not None else all_sets):
        elimination = all_sets.get(owner)
        if elimination is None:
            continue
        removed.extend((owner, e) for e in elimination.drop_involving(name))
    return removed


def total_entries(all_sets: Mapping[str, EliminationSet]) -> int:
    return sum(len(e) for e in all_sets.values())
