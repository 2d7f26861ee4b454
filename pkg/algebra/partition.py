from typing import Iterable, List, Sequence, Tuple

import numpy as np

from utils.errors import ValidationError


class Partition:
    def __init__(self, rep: Sequence[int]):
        """
        An equivalence relation on {0, …, size-1} in canonical form: rep[a] is
        the least element of the block of a.

        Args:
            rep: the canonical representative of every element
        """
        rep = np.asarray(rep, dtype=np.int64)
        if np.any(rep > np.arange(len(rep))) or np.any(rep < 0) or np.any(rep[rep] != rep):
            raise ValidationError(f'not a canonical partition: {rep.tolist()}')
        self.rep = rep
        self.rep.setflags(write=False)

    @classmethod
    def equality(cls, size: int) -> 'Partition':
        return cls(np.arange(size))

    @classmethod
    def total(cls, size: int) -> 'Partition':
        return cls(np.zeros(size, dtype=np.int64))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> 'Partition':
        """Canonicalize any block labelling: elements with equal labels share a block."""
        first = {}
        rep = []
        for a, label in enumerate(labels):
            rep.append(first.setdefault(label, a))
        return cls(rep)

    @classmethod
    def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> 'Partition':
        labels = list(range(size))
        for block in blocks:
            block = sorted(block)
            if block and not 0 <= block[0] <= block[-1] < size:
                raise ValidationError(f'block {block} leaves the universe of size {size}')
            for a in block:
                labels[a] = block[0]
        return cls.from_labels(labels)

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[Tuple[int, int]]) -> 'Partition':
        """The least equivalence relation containing pairs."""
        parent = list(range(size))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in pairs:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls([find(a) for a in range(size)])

    @property
    def size(self) -> int:
        return len(self.rep)

    def blocks(self) -> List[List[int]]:
        blocks = {}
        for a, r in enumerate(self.rep.tolist()):
            blocks.setdefault(r, []).append(a)
        return [blocks[r] for r in sorted(blocks)]

    def block_of(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.rep == self.rep[a])

    def related(self, a: int, b: int) -> bool:
        return bool(self.rep[a] == self.rep[b])

    def pairs(self) -> List[Tuple[int, int]]:
        """Every ordered pair of the relation."""
        return [(a, b) for block in self.blocks() for a in block for b in block]

    def spanning_pairs(self) -> List[Tuple[int, int]]:
        """A small generating set: each element paired with its representative."""
        return [(int(r), a) for a, r in enumerate(self.rep.tolist()) if r != a]

    def relation_size(self) -> int:
        return sum(len(block) ** 2 for block in self.blocks())

    def is_equality(self) -> bool:
        return bool(np.all(self.rep == np.arange(self.size)))

    def is_total(self) -> bool:
        return bool(np.all(self.rep == 0))

    def __le__(self, other: 'Partition') -> bool:
        """Refinement: every block of self lies inside a block of other."""
        return bool(np.all(other.rep[self.rep] == other.rep))

    def __lt__(self, other: 'Partition') -> bool:
        return self <= other and self != other

    def join(self, other: 'Partition') -> 'Partition':
        return Partition.from_pairs(self.size, self.spanning_pairs() + other.spanning_pairs())

    def meet(self, other: 'Partition') -> 'Partition':
        return Partition.from_labels(list(zip(self.rep.tolist(), other.rep.tolist())))

    def is_compatible(self, table) -> bool:
        """Whether an operation table preserves the relation."""
        rep = self.rep
        grid = rep[table.grid()]
        for axis in range(table.arity):
            moved = np.moveaxis(grid, axis, 0)
            # replacing an argument by its representative must not change the class
            if np.any(moved != moved[rep]):
                return False
        return True

    def is_congruence(self, alg) -> bool:
        return all(self.is_compatible(op.table) for op in alg.ops)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and np.array_equal(self.rep, other.rep)

    def __hash__(self) -> int:
        return hash(self.rep.tobytes())

    def __repr__(self) -> str:
        return f'Partition({self.blocks()})'
