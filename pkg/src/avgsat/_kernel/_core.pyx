# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration/evaluation kernels.

Mirrors avgsat._kernel._pure exactly (same functions, same results,
same ordering); see that module for the shared conventions.  The fast
paths cover up to 6 variables (truth-table masks in one 64-bit word),
connective arity up to 6, and 120 tokens; anything wider is delegated
to the pure twin.
"""

from libc.stdint cimport uint64_t

from . import _pure

IMPL = "cython"

DEF MAXLEN = 120

var_mask = _pure.var_mask
count_length = _pure.count_length
compact_order = _pure.compact_order


cdef uint64_t _var_mask64(int i, int n) noexcept:
    cdef uint64_t mask = 0
    cdef int m
    for m in range(1 << n):
        if (m >> i) & 1:
            mask |= (<uint64_t>1) << m
    return mask


cdef uint64_t _eval64(const long* codes, int ncodes, int n,
                      const int* arities, const uint64_t* tts,
                      const uint64_t* vmasks) noexcept:
    """Truth-table mask over n <= 6 variables; assumes valid RPN."""
    cdef uint64_t full = <uint64_t>0xFFFFFFFFFFFFFFFF if n == 6 else ((<uint64_t>1 << (1 << n)) - 1)
    cdef uint64_t stack[MAXLEN]
    cdef uint64_t acc, term, tt
    cdef int sp = 0, k, a, j, r
    cdef long c
    for k in range(ncodes):
        c = codes[k]
        if c >= 0:
            stack[sp] = vmasks[c]
            sp += 1
        else:
            j = -c - 1
            a = arities[j]
            tt = tts[j]
            sp -= a
            acc = 0
            for r in range(1 << a):
                if (tt >> r) & 1:
                    term = full
                    for i in range(a):
                        if (r >> (a - 1 - i)) & 1:
                            term &= stack[sp + i]
                        else:
                            term &= full & ~stack[sp + i]
                    acc |= term
            stack[sp] = acc
            sp += 1
    return stack[sp - 1]


cdef bint _fits_fast(codes, n, arities) except -1:
    if n > 6 or len(codes) > MAXLEN:
        return False
    for a in arities:
        if a > 6:
            return False
    return True


def eval_mask(codes, n, arities, tts):
    """Truth-table mask of an RPN code sequence over n variables."""
    if not _fits_fast(codes, n, arities):
        return _pure.eval_mask(codes, n, arities, tts)
    cdef long ccodes[MAXLEN]
    cdef int carities[64]
    cdef uint64_t ctts[64]
    cdef uint64_t vmasks[6]
    cdef int i, nc = len(codes), nconn = len(arities), nn = n
    for i in range(nc):
        ccodes[i] = codes[i]
    for i in range(nconn):
        carities[i] = arities[i]
        ctts[i] = tts[i]
    for i in range(nn):
        vmasks[i] = _var_mask64(i, nn)
    return _eval64(ccodes, nc, nn, carities, ctts, vmasks)


def eval_mask_compact(codes, arities, tts):
    """Mask over first-appearance-compacted variables; returns (mask, alpha)."""
    order = _pure.compact_order(codes)
    slot = {v: i for i, v in enumerate(order)}
    remapped = [slot[c] if c >= 0 else c for c in codes]
    return eval_mask(remapped, len(order), arities, tts), len(order)


cdef void _fill_feas(unsigned char* feas, int length, int dmax, int n_vars,
                     arities) except *:
    """feas[r*dmax + d] = 1 iff depth d reaches 1 in exactly r tokens."""
    cdef int r, d, a
    distinct = sorted(set(arities))
    cdef int nd = len(distinct)
    cdef int dist[64]
    for r in range(nd):
        dist[r] = distinct[r]
    for r in range((length + 1) * dmax):
        feas[r] = 0
    feas[1] = 1  # r = 0, d = 1
    for r in range(1, length + 1):
        for d in range(dmax):
            if n_vars > 0 and d + 1 < dmax and feas[(r - 1) * dmax + d + 1]:
                feas[r * dmax + d] = 1
                continue
            for k in range(nd):
                a = dist[k]
                if d >= a and feas[(r - 1) * dmax + d - a + 1]:
                    feas[r * dmax + d] = 1
                    break


cdef class _Enumerator:
    cdef long codes[MAXLEN]
    cdef int arities[64]
    cdef uint64_t tts[64]
    cdef uint64_t vmasks[6]
    cdef unsigned char feas[(MAXLEN + 1) * (MAXLEN + 2)]
    cdef int length, dmax, n_vars, n_conns, exact_conns, alpha
    cdef bint want_masks, compact
    cdef list out

    def run(self, int n_vars, arities, tts, int length, int exact_conns,
            int alpha, bint want_masks, bint compact):
        self.length = length
        self.dmax = length + 2
        self.n_vars = n_vars
        self.n_conns = len(arities)
        self.exact_conns = exact_conns
        self.alpha = alpha
        self.want_masks = want_masks
        self.compact = compact
        self.out = []
        cdef int i
        for i in range(self.n_conns):
            self.arities[i] = arities[i]
            self.tts[i] = tts[i]
        for i in range(n_vars):
            self.vmasks[i] = _var_mask64(i, n_vars)
        _fill_feas(self.feas, length, self.dmax, n_vars, arities)
        self._rec(0, 0, 0, 0)
        return self.out

    cdef int _popcount(self, uint64_t v) noexcept:
        cdef int c = 0
        while v:
            v &= v - 1
            c += 1
        return c

    cdef void _emit(self, uint64_t used):
        cdef int a_x = self._popcount(used)
        if self.alpha >= 0 and a_x != self.alpha:
            return
        mask = None
        cdef long remapped[MAXLEN]
        cdef long slot[MAXLEN]
        cdef uint64_t vm[6]
        cdef int i, k
        cdef long c
        if self.want_masks:
            if self.compact:
                for i in range(self.n_vars):
                    slot[i] = -1
                k = 0
                for i in range(self.length):
                    c = self.codes[i]
                    if c >= 0:
                        if slot[c] < 0:
                            slot[c] = k
                            k += 1
                        remapped[i] = slot[c]
                    else:
                        remapped[i] = c
                for i in range(k):
                    vm[i] = _var_mask64(i, k)
                mask = _eval64(remapped, self.length, k, self.arities,
                               self.tts, vm)
            else:
                mask = _eval64(self.codes, self.length, self.n_vars,
                               self.arities, self.tts, self.vmasks)
        cdef list py = []
        for i in range(self.length):
            py.append(self.codes[i])
        self.out.append((tuple(py), mask, a_x))

    cdef void _rec(self, int pos, int depth, int conns_used, uint64_t used):
        if pos == self.length:
            if self.exact_conns >= 0 and conns_used != self.exact_conns:
                return
            self._emit(used)
            return
        cdef int rem = self.length - pos - 1
        if self.exact_conns >= 0 and conns_used + rem + 1 < self.exact_conns:
            return
        cdef int v, j, a
        if self.feas[rem * self.dmax + depth + 1]:
            for v in range(self.n_vars):
                self.codes[pos] = v
                self._rec(pos + 1, depth + 1, conns_used,
                          used | ((<uint64_t>1) << v))
        if self.exact_conns >= 0 and conns_used >= self.exact_conns:
            return
        for j in range(self.n_conns):
            a = self.arities[j]
            if depth >= a and self.feas[rem * self.dmax + depth - a + 1]:
                self.codes[pos] = -j - 1
                self._rec(pos + 1, depth - a + 1, conns_used + 1, used)


def enumerate_length(n_vars, arities, tts, length, exact_conns=-1, alpha=-1,
                     want_masks=True, compact=False):
    """See the pure twin; identical results in identical order."""
    if n_vars > 6 or length > MAXLEN or any(a > 6 for a in arities) or len(arities) > 64:
        return _pure.enumerate_length(n_vars, arities, tts, length,
                                      exact_conns=exact_conns, alpha=alpha,
                                      want_masks=want_masks, compact=compact)
    return _Enumerator().run(n_vars, arities, tts, length, exact_conns,
                             alpha, want_masks, compact)


cdef class _Census:
    cdef int arities[64]
    cdef unsigned char feas[(MAXLEN + 1) * (MAXLEN + 2)]
    cdef int length, dmax, n_vars, n_conns, exact_conns
    cdef bint canonical
    cdef unsigned long long total, pow2sum

    def run(self, int n_vars, arities, int length, int exact_conns,
            bint canonical):
        self.length = length
        self.dmax = length + 2
        self.n_vars = n_vars
        self.n_conns = len(arities)
        self.exact_conns = exact_conns
        self.canonical = canonical
        self.total = 0
        self.pow2sum = 0
        cdef int i
        for i in range(self.n_conns):
            self.arities[i] = arities[i]
        _fill_feas(self.feas, length, self.dmax, n_vars, arities)
        self._rec(0, 0, 0, 0, -1, False)
        return self.total, self.pow2sum

    cdef void _rec(self, int pos, int depth, int conns_used, uint64_t used,
                   int last, bint in_tail) noexcept:
        cdef uint64_t u
        cdef int nv
        if pos == self.length:
            if conns_used == self.exact_conns:
                self.total += 1
                nv = 0
                u = used
                while u:
                    u &= u - 1
                    nv += 1
                self.pow2sum += (<unsigned long long>1) << nv
            return
        cdef int rem = self.length - pos - 1
        if conns_used + rem + 1 < self.exact_conns:
            return
        cdef int v, j, a
        cdef bint tail
        if self.feas[rem * self.dmax + depth + 1]:
            for v in range(self.n_vars):
                if self.canonical and used:
                    if in_tail or v != last:
                        if v <= last:
                            continue
                        tail = True
                    else:
                        tail = False
                else:
                    tail = in_tail
                self._rec(pos + 1, depth + 1, conns_used,
                          used | ((<uint64_t>1) << v), v, tail)
        if conns_used >= self.exact_conns:
            return
        for j in range(self.n_conns):
            a = self.arities[j]
            if depth >= a and self.feas[rem * self.dmax + depth - a + 1]:
                self._rec(pos + 1, depth - a + 1, conns_used + 1, used,
                          last, in_tail)


def census_length(n_vars, arities, tts, length, exact_conns, canonical=True):
    """See the pure twin; identical results."""
    if n_vars > 64 or length > MAXLEN or len(arities) > 64:
        return _pure.census_length(n_vars, arities, tts, length, exact_conns,
                                   canonical=canonical)
    return _Census().run(n_vars, arities, length, exact_conns, canonical)
