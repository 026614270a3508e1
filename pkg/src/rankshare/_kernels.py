"""Partition walker behind :func:`rankshare.combinatorics.count_rank_share_fast`.

The same Python source runs two ways: compiled by numba on int64 arrays when
every count is known to fit, and as plain Python (``.py_func``) on object
arrays holding arbitrary-precision ints otherwise.  It is a single
self-contained function so that ``.py_func`` never calls compiled code.

Partitions are generated with parts in nonincreasing order.  The first N-2
parts are walked with an explicit stack; the last two parts (x, y) with
x >= y and x + y = R form a contiguous family that is folded into difference
arrays in O(1), so the cost is one step per prefix rather than one per
partition.
"""

import numba


@numba.njit(cache=True, nogil=True)
def walk_partitions(T, N, fact, v_lo, v_hi, hist, dpen, dlast, dens, acc):
    """Add the multiplicity of every partition of ``T`` into ``N`` parts
    whose largest part lies in ``[v_lo, v_hi]``; return the total weight.

    Ranks 1..N-2 go straight into ``hist`` (shape (N, T + 1)).  Ranks N-1
    and N go into the difference arrays ``dpen`` and ``dlast`` (length
    T + 2).  ``dens`` and ``acc`` are length-N scratch arrays with the same
    dtype as ``hist``.  ``fact`` is ``N!``.  Requires N >= 2.
    """
    P = N - 2
    vals = [0] * N
    rem = [0] * (N + 1)
    runs = [0] * N
    cur = [0] * N
    zero = fact - fact
    one = fact // fact
    rem[0] = T
    cur[0] = v_lo
    acc[0] = zero
    pos = 0
    while True:
        if pos == P:
            # last two parts: x <= bound, y <= x, x + y == R
            R = rem[P]
            if P == 0:
                bound = T + 1
                run = 0
                den = one
            else:
                bound = vals[P - 1]
                run = runs[P - 1]
                den = dens[P - 1]
            ylo = R - bound
            if ylo < 0:
                ylo = 0
            yhi = R // 2
            even = R % 2 == 0
            x_hits_bound = R >= bound
            w = zero
            if ylo > yhi:
                pass
            elif x_hits_bound and R == 2 * bound:
                # x == y == bound
                w = fact // (den * (run + 1) * (run + 2))
                dlast[bound] += w
                dlast[bound + 1] -= w
                dpen[bound] += w
                dpen[bound + 1] -= w
            else:
                a = ylo
                b = yhi
                if x_hits_bound:
                    c = fact // (den * (run + 1))
                    dlast[ylo] += c
                    dlast[ylo + 1] -= c
                    dpen[bound] += c
                    dpen[bound + 1] -= c
                    w += c
                    a += 1
                if even:
                    c = fact // (den * 2)
                    dlast[yhi] += c
                    dlast[yhi + 1] -= c
                    dpen[yhi] += c
                    dpen[yhi + 1] -= c
                    w += c
                    b -= 1
                if a <= b:
                    c = fact // den
                    dlast[a] += c
                    dlast[b + 1] -= c
                    dpen[R - b] += c
                    dpen[R - a + 1] -= c
                    w += c * (b - a + 1)
            if P == 0:
                return w
            pos -= 1
            hist[pos, vals[pos]] += w
            acc[pos] += w
            cur[pos] += 1
            continue

        if pos == 0:
            hi = v_hi
        else:
            hi = vals[pos - 1] if vals[pos - 1] < rem[pos] else rem[pos]
        if cur[pos] > hi:
            if pos == 0:
                break
            w = acc[pos]
            pos -= 1
            hist[pos, vals[pos]] += w
            acc[pos] += w
            cur[pos] += 1
            continue

        v = cur[pos]
        vals[pos] = v
        if pos > 0 and v == vals[pos - 1]:
            runs[pos] = runs[pos - 1] + 1
            dens[pos] = dens[pos - 1] * runs[pos]
        else:
            runs[pos] = 1
            dens[pos] = dens[pos - 1] if pos > 0 else one
        rem[pos + 1] = rem[pos] - v
        pos += 1
        if pos < P:
            slots = N - pos
            cur[pos] = (rem[pos] + slots - 1) // slots
            acc[pos] = zero
    return acc[0]
