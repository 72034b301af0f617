"""Compiled engine for the fixed-multiplicity walk.

This is a performance twin of the python engine in ``explorer``: one numba
function walks a whole unit (a subtree at fixed multiplicity) over explicit
frame arrays — membership words, primitive lists and the incremental scalars
— so no Python objects are touched inside the hot loop and units can run on
real threads (``nogil``).  Counts, pruned tallies and hit records must come
out identical to the python engine; the test suite holds the two engines to
that.

Differences from the reference implementation are mechanical only:

* membership lives in uint64 word arrays instead of a big int;
* the new-primitive test scans the child's primitives instead of its members
  (p+m decomposes iff p+m − r is a member for some primitive r, because any
  decomposition refines to one whose first part is a primitive);
* cut decisions re-derive the closed forms from ``properties`` (child gcd by
  the three-case rule, density thresholds, bounded conductor/genus windows).

numba is optional: when it is missing ``AVAILABLE`` is False and the python
engine is used instead.
"""

from __future__ import annotations

import numpy as np

from .core import InvariantRecord
from .properties import gcd_lefts

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    AVAILABLE = False

__all__ = ["AVAILABLE", "run_unit"]

_WORD_MASK = 0xFFFFFFFFFFFFFFFF

_TARGET_CODE = {
    "count_all": 0,
    "wilf_negative": 1,
    "eliahou_negative": 2,
    "zero_wilf_nontrivial": 3,
    "little_density": 4,
    "non_generic": 5,
}

_PROPERTY_CODE = {
    "large_density": 0,
    "small_depth": 1,
    "genus_bound": 2,
}


if AVAILABLE:

    @njit(cache=True, nogil=True)
    def _bit_get(words, i):
        return (words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1)

    @njit(cache=True, nogil=True)
    def _bit_set(words, i):
        words[i >> 6] |= np.uint64(1) << np.uint64(i & 63)

    @njit(cache=True, nogil=True)
    def _bit_clear(words, i):
        words[i >> 6] &= ~(np.uint64(1) << np.uint64(i & 63))

    @njit(cache=True, nogil=True)
    def _popcount(x):
        n = 0
        while x:
            x &= x - np.uint64(1)
            n += 1
        return n

    @njit(cache=True, nogil=True)
    def _gcd(a, b):
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True, nogil=True)
    def _shift_or(words, nwords, nbits, shift):
        """words |= words << shift, truncated to nbits."""
        ws = shift >> 6
        bs = shift & 63
        if bs == 0:
            for w in range(nwords - 1, ws - 1, -1):
                words[w] |= words[w - ws]
        else:
            b = np.uint64(bs)
            nb = np.uint64(64 - bs)
            for w in range(nwords - 1, ws, -1):
                words[w] |= (words[w - ws] << b) | (words[w - ws - 1] >> nb)
            words[ws] |= words[0] << b
        tail = nbits & 63
        if tail:
            words[nwords - 1] &= (np.uint64(1) << np.uint64(tail)) - np.uint64(1)

    @njit(cache=True, nogil=True)
    def _closure_fill(scratch, nbits, prims, nprims):
        """Truncated closure of prims[:nprims] on [0, nbits) into scratch."""
        nwords = (nbits + 63) >> 6
        for w in range(nwords):
            scratch[w] = np.uint64(0)
        scratch[0] = np.uint64(1)
        for j in range(nprims):
            g = prims[j]
            if g >= nbits:
                break
            shift = g
            while shift < nbits:
                _shift_or(scratch, nwords, nbits, shift)
                shift <<= 1
        return nwords

    @njit(cache=True, nogil=True)
    def _bounded_conductor_leq(scratch, prims, nprims, k, m):
        if k < 0:
            return False
        _closure_fill(scratch, k + m, prims, nprims)
        for b in range(k, k + m):
            if _bit_get(scratch, b) == np.uint64(0):
                return False
        return True

    @njit(cache=True, nogil=True)
    def _bounded_genus_leq(scratch, prims, nprims, g, m):
        if g < 0:
            return False
        nbits = 2 * g + m
        nwords = _closure_fill(scratch, nbits, prims, nprims)
        members = 0
        for w in range(nwords):
            members += _popcount(scratch[w])
        return nbits - members <= g

    @njit(cache=True, nogil=True)
    def _hit_match(tkind, tnum, tden, m, c, g, e, lpc, lc, prims):
        if tkind == 0:
            return False
        if tkind == 1:
            return e * lc - c < 0
        if tkind == 2:
            depth = (c + m - 1) // m
            dq = m - (e - lpc)
            return lpc * lc - depth * dq + (depth * m - c) < 0
        if tkind == 3:
            if e * lc - c != 0 or e <= 2:
                return False
            if e == m:  # quasi-superficial shapes are the benign zeros
                p1 = prims[1]
                if p1 > m and p1 % m == 1:
                    qs = True
                    for j in range(2, e):
                        if prims[j] != p1 + j - 1:
                            qs = False
                            break
                    if qs:
                        return False
            return True
        if tkind == 4:
            return m * tden > e * tnum
        return c * tden > tnum * m

    @njit(cache=True, nogil=True)
    def _walk(m, nwords, bits0, prims0, c0, g0, lc0, lpc0, gcd0, gamma,
              skip_first, tkind, tnum, tden, pkinds, pnums, pdens, scratch,
              counts, pruned, hitbuf):
        """Depth-first walk of one unit; returns (status, hit words written).

        status 0 = done, 1 = hit buffer too small (caller reruns larger).
        """
        maxdepth = gamma - g0 + 2
        fbits = np.zeros((maxdepth, nwords), np.uint64)
        fprims = np.zeros((maxdepth, m + 1), np.int64)
        fc = np.zeros(maxdepth, np.int64)
        fg = np.zeros(maxdepth, np.int64)
        fe = np.zeros(maxdepth, np.int64)
        flpc = np.zeros(maxdepth, np.int64)
        flc = np.zeros(maxdepth, np.int64)
        fgcd = np.zeros(maxdepth, np.int64)
        fcur = np.zeros(maxdepth, np.int64)
        ntrim = pkinds.shape[0]
        hcap = hitbuf.shape[0]
        hpos = 0

        e0 = prims0.shape[0]
        for w in range(nwords):
            fbits[0, w] = bits0[w]
        for j in range(e0):
            fprims[0, j] = prims0[j]
        fc[0] = c0
        fg[0] = g0
        fe[0] = e0
        flpc[0] = lpc0
        flc[0] = lc0
        fgcd[0] = gcd0

        counts[g0] += 1
        if _hit_match(tkind, tnum, tden, m, c0, g0, e0, lpc0, lc0, fprims[0]):
            if hpos + 5 + e0 > hcap:
                return 1, hpos
            hitbuf[hpos] = c0
            hitbuf[hpos + 1] = g0
            hitbuf[hpos + 2] = lc0
            hitbuf[hpos + 3] = lpc0
            hitbuf[hpos + 4] = e0
            for j in range(e0):
                hitbuf[hpos + 5 + j] = fprims[0, j]
            hpos += 5 + e0

        start = lpc0
        if start < e0 and fprims[0, start] == m:
            start += 1  # stay inside the fixed-multiplicity subtree
        if skip_first != 0:
            start += 1  # unit owns the chain, not its successor's subtree
        if g0 + 1 > gamma:
            start = e0
        fcur[0] = start

        d = 0
        while d >= 0:
            i = fcur[d]
            if i >= fe[d]:
                d -= 1
                continue
            fcur[d] += 1
            p = fprims[d, i]
            pc = fc[d]
            g2 = fg[d] + 1

            if p == pc:
                gcd2 = fgcd[d]
            elif p == pc + 1:
                gcd2 = _gcd(fgcd[d], pc)
            else:
                gcd2 = 1

            cut = False
            for t in range(ntrim):
                a = pnums[t]
                b = pdens[t]
                if pkinds[t] == 0:
                    le = i if gcd2 == 1 else i + 1
                    if le * a >= m * b:
                        cut = True
                        break
                elif gcd2 != 1:
                    continue  # infinite left gcd: never cutting
                elif pkinds[t] == 1:
                    if _bounded_conductor_leq(scratch, fprims[d], i, a * m // b, m):
                        cut = True
                        break
                else:
                    if _bounded_genus_leq(scratch, fprims[d], i, a, m):
                        cut = True
                        break
            if cut:
                pruned[g2] += 1
                continue

            # materialize the child frame
            c2 = p + 1
            row = fbits[d + 1]
            for w in range(nwords):
                row[w] = fbits[d, w]
            for bpos in range(pc + m, c2 + m):
                _bit_set(row, bpos)
            _bit_clear(row, p)

            q = p + m
            decomp = False
            for j in range(fe[d]):
                if j == i:
                    continue
                if _bit_get(row, q - fprims[d, j]) != np.uint64(0):
                    decomp = True
                    break
            k = 0
            for j in range(fe[d]):
                if j == i:
                    continue
                fprims[d + 1, k] = fprims[d, j]
                k += 1
            if not decomp:
                fprims[d + 1, k] = q
                k += 1
            e2 = k
            lc2 = flc[d] + (p - pc)
            fc[d + 1] = c2
            fg[d + 1] = g2
            fe[d + 1] = e2
            flpc[d + 1] = i
            flc[d + 1] = lc2
            fgcd[d + 1] = gcd2

            counts[g2] += 1
            if _hit_match(tkind, tnum, tden, m, c2, g2, e2, i, lc2, fprims[d + 1]):
                if hpos + 5 + e2 > hcap:
                    return 1, hpos
                hitbuf[hpos] = c2
                hitbuf[hpos + 1] = g2
                hitbuf[hpos + 2] = lc2
                hitbuf[hpos + 3] = i
                hitbuf[hpos + 4] = e2
                for j in range(e2):
                    hitbuf[hpos + 5 + j] = fprims[d + 1, j]
                hpos += 5 + e2

            fcur[d + 1] = e2 if g2 + 1 > gamma else i
            d += 1
        return 0, hpos


def run_unit(root, skip_first, gamma, trim, target):
    """Walk one unit on the compiled engine.

    Same contract as the python unit runner: (counts per genus, pruned per
    genus, hits) with hits in depth-first order.
    """
    if not AVAILABLE:  # pragma: no cover
        raise RuntimeError("compiled kernel unavailable (numba not importable)")
    from .explorer import Hit  # deferred: explorer imports us lazily

    m = root.multiplicity
    nwords = (2 * gamma + m + 2 + 63) // 64
    masked = root._bits & ((1 << (root.conductor + m)) - 1)
    bits0 = np.zeros(nwords, np.uint64)
    for w in range(nwords):
        bits0[w] = (masked >> (64 * w)) & _WORD_MASK
    prims0 = np.asarray(root.primitives, np.int64)

    tkind = _TARGET_CODE[target.kind.value]
    tnum = target.param.numerator if target.param is not None else 0
    tden = target.param.denominator if target.param is not None else 1
    pkinds = np.asarray([_PROPERTY_CODE[p.kind.value] for p in trim], np.int64)
    pnums = np.asarray([p.param.numerator for p in trim], np.int64)
    pdens = np.asarray([p.param.denominator for p in trim], np.int64)

    scratch_bits = 1
    for p in trim:
        if p.kind.value == "small_depth":
            scratch_bits = max(
                scratch_bits, p.param.numerator * m // p.param.denominator + m
            )
        elif p.kind.value == "genus_bound":
            scratch_bits = max(scratch_bits, 2 * p.param.numerator + m)
    scratch = np.zeros((scratch_bits + 63) // 64 + 1, np.uint64)

    counts = np.zeros(gamma + 1, np.int64)
    pruned = np.zeros(gamma + 1, np.int64)
    cap = 1 << 12
    while True:
        counts[:] = 0
        pruned[:] = 0
        hitbuf = np.empty(cap, np.int64)
        status, hlen = _walk(
            m, nwords, bits0, prims0,
            root.conductor, root.genus, root.left_count,
            root.left_prim_count, gcd_lefts(root),
            gamma, 1 if skip_first else 0,
            tkind, tnum, tden, pkinds, pnums, pdens, scratch,
            counts, pruned, hitbuf,
        )
        if status == 0:
            break
        cap *= 2

    hits = []
    pos = 0
    while pos < hlen:
        c = int(hitbuf[pos])
        g = int(hitbuf[pos + 1])
        lc = int(hitbuf[pos + 2])
        lpc = int(hitbuf[pos + 3])
        e = int(hitbuf[pos + 4])
        prims = tuple(int(x) for x in hitbuf[pos + 5:pos + 5 + e])
        pos += 5 + e
        depth = -(-c // m)
        dq = m - (e - lpc)
        record = InvariantRecord(
            wilf=e * lc - c,
            eliahou=lpc * lc - depth * dq + (depth * m - c),
            depth=depth,
            density=-(-m // e),
            edim=e,
            rho=depth * m - c,
            dq_count=dq,
        )
        if lpc == 0 or lpc == e:
            gens, trunc = prims, None
        else:
            gens, trunc = prims[:lpc], c
        hits.append(
            Hit(
                generators=gens,
                truncation=trunc,
                multiplicity=m,
                genus=g,
                conductor=c,
                record=record,
            )
        )
    return counts.tolist(), pruned.tolist(), hits
