"""Pure-Python implementations of the hot loops (fallback for ``_ckernels``).

Flats are identified by dense ids sorted by rank; ``masks[i]`` is the bitmask
of hyperplanes containing flat ``i``.  The join table is a flat ``array('i')``
indexed ``a * nflats + b``.
"""
from __future__ import annotations

from array import array
from itertools import product


def count_complement(forms, n, q):
    """Number of points of F_q^n on none of the given linear forms.

    Every prefix (x_1, ..., x_{n-1}) is enumerated; along the last coordinate
    each form has at most one root, so the fibre is counted exactly.
    """
    if not forms:
        return q ** n
    inv_last = []
    for f in forms:
        c = f[n - 1] % q
        inv_last.append(pow(c, q - 2, q) if c else 0)
    total = 0
    for prefix in product(range(q), repeat=n - 1):
        roots = set()
        dead = False
        for f, inv in zip(forms, inv_last):
            s = 0
            for c, x in zip(f, prefix):
                s += c * x
            s %= q
            if inv:
                roots.add((-s * inv) % q)
            elif s == 0:
                dead = True
                break
        if not dead:
            total += q - len(roots)
    return total


def join_table(masks):
    """Join of every pair of flats: the lowest-id common upper bound."""
    nf = len(masks)
    up = []
    for a in range(nf):
        ma = masks[a]
        bits = 0
        for c in range(a, nf):
            if ma & ~masks[c] == 0:
                bits |= 1 << c
        up.append(bits)
    table = array("i", bytes(4 * nf * nf))
    for a in range(nf):
        ua = up[a]
        row = a * nf
        for b in range(a, nf):
            common = ua & up[b]
            j = (common & -common).bit_length() - 1
            table[row + b] = j
            table[b * nf + a] = j
    return table


def join_map_is_isomorphism(join, nflats, masks, factors, target, target_size, bottom):
    """Whether (y_1, ..., y_k) -> y_1 v ... v y_k is an order isomorphism
    from the product of the ``factors`` down-sets onto the down-set of ``target``.
    """
    size = 1
    for f in factors:
        size *= len(f)
    if size != target_size:
        return False
    mt = masks[target]
    tuples = list(product(*factors))
    images = []
    seen = set()
    for t in tuples:
        acc = bottom
        for y in t:
            acc = join[acc * nflats + y]
        if acc in seen or masks[acc] & ~mt:
            return False
        seen.add(acc)
        images.append(masks[acc])
    for i, ti in enumerate(tuples):
        mi = images[i]
        for j, tj in enumerate(tuples):
            if i != j and mi & ~images[j] == 0:
                for a, b in zip(ti, tj):
                    if masks[a] & ~masks[b]:
                        return False
    return True
