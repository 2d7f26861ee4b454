from abc import ABC, abstractmethod
from itertools import combinations, product
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from algebra.finite_algebra import FiniteAlgebra
from algebra.relations import PartialFunction, RelationSet
from utils.errors import ValidationError


def relation_constraints(relation: RelationSet, domain: RelationSet) -> np.ndarray:
    """
    Every choice of domain.n members of relation whose columns all lie in
    domain, as the tuple of domain point indices hit by the columns.

    Returns:
        an array of shape (c, relation.n) of distinct rows
    """
    size, k = domain.size, domain.n
    rows = relation.rows()
    index = np.full(size ** k, -1, dtype=np.int64)
    index[domain.codes] = np.arange(len(domain))
    last = rows * size ** (k - 1)
    found = [np.zeros((0, relation.n), dtype=np.int64)]
    for choice in product(range(len(rows)), repeat=k - 1):
        partial = np.zeros(relation.n, dtype=np.int64)
        for position, r in enumerate(choice):
            partial += rows[r] * size ** position
        points = index[last + partial]
        found.append(points[np.all(points >= 0, axis=1)])
    found = np.concatenate(found)
    return np.unique(found, axis=0) if len(found) else found


class DomainConstraints(ABC):
    """Constraints of one preservation oracle, specialised to one domain."""

    @abstractmethod
    def check(self, values: np.ndarray, point: int) -> bool:
        """
        Check every constraint whose points are among 0..point and include point.

        Args:
            values: the assignment, valid at indices 0..point
            point: the index assigned last
        """
        raise NotImplementedError


class PreservationOracle(ABC):
    """A set of relations a partial function has to preserve."""

    @abstractmethod
    def prepare(self, domain: RelationSet) -> DomainConstraints:
        raise NotImplementedError

    def verify(self, f: PartialFunction) -> bool:
        """Exhaustively decide preservation for a complete partial function."""
        constraints = self.prepare(f.domain)
        values = f.values.astype(np.int64)
        return all(constraints.check(values, point) for point in range(len(values)))

    @abstractmethod
    def describe(self) -> dict:
        raise NotImplementedError


class _RelationConstraints(DomainConstraints):
    def __init__(self, size: int, relations: Sequence[RelationSet], domain: RelationSet):
        self.size = size
        self.by_point: Dict[int, List[Tuple[np.ndarray, RelationSet]]] = {}
        for relation in relations:
            points = relation_constraints(relation, domain)
            if not len(points):
                continue
            last = points.max(axis=1)
            for point in np.unique(last).tolist():
                self.by_point.setdefault(point, []).append((points[last == point], relation))

    def check(self, values: np.ndarray, point: int) -> bool:
        for points, relation in self.by_point.get(point, ()):
            codes = values[points] @ (self.size ** np.arange(relation.n, dtype=np.int64))
            if not np.all(relation.contains_codes(codes)):
                return False
        return True


class RelationsOracle(PreservationOracle):
    def __init__(self, alg: FiniteAlgebra, relations: Sequence[RelationSet]):
        """
        Preservation of an explicit list of subuniverses of powers.

        Args:
            alg: the algebra
            relations: the candidate relations, each flagged as a subuniverse
        """
        for i, relation in enumerate(relations):
            if relation.size != alg.size:
                raise ValidationError(f'candidate {i} lives over a universe of size {relation.size}')
            if not relation.subuniverse:
                raise ValidationError(f'candidate {i} is not flagged as a subuniverse')
            if not len(relation):
                raise ValidationError(f'candidate {i} is empty')
        self.alg = alg
        self.relations = list(relations)

    def prepare(self, domain: RelationSet) -> DomainConstraints:
        return _RelationConstraints(self.alg.size, self.relations, domain)

    def describe(self) -> dict:
        return {'source': 'relations', 'count': len(self.relations),
                'arities': [relation.n for relation in self.relations]}


class _LocalInterpolation(DomainConstraints):
    def __init__(self, size: int, columns: np.ndarray, power: int):
        """
        Args:
            size: the universe size
            columns: term tables restricted to the domain, shape (terms, points)
            power: n, the largest number of points checked together
        """
        self.size = size
        self.columns = columns.astype(np.int64)
        self.power = power
        self._allowed: Dict[Tuple[int, ...], frozenset] = {}

    def allowed(self, points: Tuple[int, ...]) -> frozenset:
        if points not in self._allowed:
            weights = self.size ** np.arange(len(points), dtype=np.int64)
            self._allowed[points] = frozenset(np.unique(self.columns[:, list(points)] @ weights).tolist())
        return self._allowed[points]

    def check(self, values: np.ndarray, point: int) -> bool:
        for r in range(min(self.power, point + 1)):
            for subset in combinations(range(point), r):
                points = subset + (point,)
                code = 0
                for p in reversed(points):
                    code = code * self.size + int(values[p])
                if code not in self.allowed(points):
                    return False
        return True


class SubpowerOracle(PreservationOracle):
    def __init__(self, size: int, power: int, term_tables: Callable[[int], np.ndarray]):
        """
        Preservation of every subuniverse of A^power. A partial function of
        arity k preserves them all iff each restriction to at most power
        domain points agrees with some k-ary term, since the subuniverse
        generated by r_1, …, r_k is {t(r_1, …, r_k) : t in Clo_k}.

        Args:
            size: the universe size
            power: n
            term_tables: the sorted k-ary term tables for every arity k
        """
        if power < 1:
            raise ValidationError(f'power must be positive, got {power}')
        self.size = size
        self.power = power
        self.term_tables = term_tables

    def prepare(self, domain: RelationSet) -> DomainConstraints:
        return _LocalInterpolation(self.size, self.term_tables(domain.n)[:, domain.codes], self.power)

    def describe(self) -> dict:
        return {'source': 'subpowers', 'power': self.power}
