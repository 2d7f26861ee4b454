"""
Elements of (B^P([k]))^Z on a finite window. An element is an array of
shape (window length + 1, 2^k): row r holds index lo + r and the last row
holds the common value of every index outside the window. Column s holds
the subset S of [k] whose bit i-1 is set for i in S.
"""
from typing import List, Optional, Tuple

import numpy as np

from utils.errors import PreconditionError, VerificationError
from witness.setup import CASE_1, WitnessSetup


def subset_sizes(k: int) -> np.ndarray:
    return np.array([bin(s).count('1') for s in range(1 << k)])


def constant_element(setup: WitnessSetup, entry: np.ndarray) -> np.ndarray:
    """The element equal to entry (a 2^k array) at every index."""
    return np.repeat(np.asarray(entry, dtype=np.int64)[None, :], setup.length + 1, axis=0)


def o_bar(setup: WitnessSetup) -> np.ndarray:
    return np.full((setup.length + 1, 1 << setup.k), setup.o, dtype=np.int64)


def u(setup: WitnessSetup, i: int) -> np.ndarray:
    """u_i(S) = a_i if i in S else o, for 1 <= i <= k."""
    members = (np.arange(1 << setup.k) >> (i - 1)) & 1
    return np.where(members == 1, setup.a[i - 1], setup.o).astype(np.int64)


def _row(setup: WitnessSetup, index: int) -> int:
    lo, hi = setup.window
    if not lo <= index <= hi:
        raise PreconditionError(f'index {index} is outside the window [{lo}, {hi}]')
    return index - lo


def d_range(setup: WitnessSetup) -> range:
    """The i for which d_i fits the window."""
    lo, hi = setup.window
    return range(lo, hi - setup.t - 3 + 1)


def d(setup: WitnessSetup, i: int) -> np.ndarray:
    """u_1 at i and i+t+3, u_2 at i+1 and i+t+2, ō elsewhere."""
    element = o_bar(setup)
    u1, u2 = u(setup, 1), u(setup, 2)
    for index, entry in ((i, u1), (i + 1, u2), (i + setup.t + 2, u2), (i + setup.t + 3, u1)):
        element[_row(setup, index)] = entry
    return element


def build_generators(setup: WitnessSetup) -> List[Tuple[str, np.ndarray]]:
    """The d_i that fit the window, c_l for 3 <= l <= k, and the constants ā for a in A."""
    generators = [(f'd{i}', d(setup, i)) for i in d_range(setup)]
    generators += [(f'c{l}', constant_element(setup, u(setup, l))) for l in range(3, setup.k + 1)]
    generators += [(f'const{a}', np.full((setup.length + 1, 1 << setup.k), a, dtype=np.int64))
                   for a in range(setup.alg.size)]
    return generators


def add(setup: WitnessSetup, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x +_o y = m(x, o, y), entrywise."""
    size = setup.alg.size
    return setup.malcev.values[x + size * setup.o + size ** 2 * y].astype(np.int64)


def neg(setup: WitnessSetup, x: np.ndarray) -> np.ndarray:
    """-x = m(o, x, o), entrywise."""
    size = setup.alg.size
    return setup.malcev.values[setup.o + size * x + size ** 2 * setup.o].astype(np.int64)


def e(setup: WitnessSetup) -> np.ndarray:
    """e = f(u_1, …, u_k, ō); checked to be f(a, o) at [k] and o elsewhere."""
    columns = np.stack([u(setup, i) for i in range(1, setup.k + 1)] + [np.full(1 << setup.k, setup.o)])
    value = setup.f.evaluate(columns).astype(np.int64)
    expected = np.full(1 << setup.k, setup.o, dtype=np.int64)
    expected[-1] = setup.value
    if not np.array_equal(value, expected):
        raise VerificationError(f'e = {value.tolist()} is not concentrated on [k]')
    if not np.all(setup.gamma.rep[value] == setup.gamma.rep[setup.o]):
        raise VerificationError(f'entries of e = {value.tolist()} leave the γ-class of o')
    return value


def v_step(setup: WitnessSetup, l: int) -> np.ndarray:
    """v_{l,l+1} = f(d_l, d_{l-t-2}, c_3, …, c_k, ō)."""
    args = [d(setup, l), d(setup, l - setup.t - 2)]
    args += [constant_element(setup, u(setup, j)) for j in range(3, setup.k + 1)]
    args.append(o_bar(setup))
    return setup.f.evaluate(np.stack(args)).astype(np.int64)


def v_range(setup: WitnessSetup) -> range:
    """The indices i for which v_{i,i+1} fits the window."""
    lo, hi = setup.window
    return range(lo + setup.t + 2, hi - setup.t - 3 + 1)


def build_v(setup: WitnessSetup, i: int, j: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    v_{i,j}: the sum of v_{l,l+1} for i <= l < j, with sign (-1)^(l-i) in Case 2.

    Returns:
        v_{i,j} and e, after checking that v_{i,j} is e at i, the signed e at j
        and ō elsewhere
    """
    if i >= j:
        raise PreconditionError(f'v_(i,j) needs i < j, got i={i}, j={j}')
    steps = v_range(setup)
    if i not in steps or j - 1 not in steps:
        raise PreconditionError(f'v_({i},{j}) does not fit the window {list(setup.window)} with t = {setup.t}')
    e_value = e(setup)
    total = v_step(setup, i)
    for l in range(i + 1, j):
        step = v_step(setup, l)
        if setup.case != CASE_1 and (l - i) % 2:
            step = neg(setup, step)
        total = add(setup, total, step)

    expected = o_bar(setup)
    expected[_row(setup, i)] = e_value
    if setup.case == CASE_1 or (j - i - 1) % 2:
        expected[_row(setup, j)] = neg(setup, e_value)
    else:
        expected[_row(setup, j)] = e_value
    if not np.array_equal(total, expected):
        raise VerificationError(f'v_({i},{j}) does not have the expected shape')
    return total, e_value


def parity_values(setup: WitnessSetup, elements: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    The parity functional on a batch of elements of shape (count, length + 1, 2^k).

    Returns:
        a mask of the elements it applies to (every entry γ-related to o and
        the off-window inner sum equal to o) and its value, o where inapplicable
    """
    elements = np.asarray(elements, dtype=np.int64)
    count = len(elements)
    in_a = np.all(elements.reshape(count, -1) < setup.alg.size, axis=1)
    classes = setup.gamma.rep[np.where(elements < setup.alg.size, elements, setup.o)]
    applicable = in_a & np.all(classes.reshape(count, -1) == setup.gamma.rep[setup.o], axis=1)
    safe = np.where(applicable[:, None, None], elements, setup.o)

    inner = np.full(safe.shape[:2], setup.o, dtype=np.int64)
    for s, size in enumerate(subset_sizes(setup.k)):
        column = safe[:, :, s]
        inner = add(setup, inner, neg(setup, column) if size % 2 else column)
    applicable &= inner[:, -1] == setup.o

    value = np.full(count, setup.o, dtype=np.int64)
    lo = setup.window[0]
    for r in range(setup.length):
        column = inner[:, r]
        if setup.case != CASE_1 and (lo + r) % 2:
            column = neg(setup, column)
        value = add(setup, value, column)
    return applicable, np.where(applicable, value, setup.o)


def parity_functional(setup: WitnessSetup, w: np.ndarray) -> Optional[int]:
    """
    Σ_i Σ_S (-1)^|S| w(i)(S) in (o/γ, +_o), with an extra sign (-1)^i in Case 2.

    Returns:
        the value, or None when some entry of w is not γ-related to o or the
        sum does not terminate outside the window
    """
    applicable, value = parity_values(setup, np.asarray(w)[None])
    return int(value[0]) if applicable[0] else None


def ghost(setup: WitnessSetup) -> np.ndarray:
    """g(0) = e, g(i) = ō for every other i."""
    g = o_bar(setup)
    g[_row(setup, 0)] = e(setup)
    return g
