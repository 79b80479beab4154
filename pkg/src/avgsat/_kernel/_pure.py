"""Pure-Python enumeration/evaluation kernels.

Reference twin of the compiled module ``avgsat._kernel._core``; the two
expose the same functions with identical results, and the dispatcher in
``avgsat._kernel`` picks whichever is available.

Conventions shared by both kernels:

* A sentence is a sequence of integer token codes: ``code >= 0`` is the
  propositional variable with that index; ``code < 0`` is the connective
  in table slot ``-code - 1``.
* Connective slot ``j`` has arity ``arities[j]`` and packed truth bits
  ``tts[j]``: bit ``r`` of ``tts[j]`` is the output for the argument
  tuple whose binary reading (most-significant bit = first argument)
  is ``r``.
* A truth-table mask over ``n`` variables is an integer whose bit ``m``
  is set iff assignment ``m`` satisfies the sentence, where variable
  ``i`` reads bit ``i`` of ``m`` (least-significant bit is variable 0).
* The enumeration order is shortlex: token count first, then
  lexicographic with variables (by index) before connectives (by slot).
"""

IMPL = "pure"


def var_mask(i, n):
    """Mask over 2^n assignments whose bit m is set iff bit i of m is set."""
    half = 1 << i
    mask = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << n
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


def eval_mask(codes, n, arities, tts):
    """Truth-table mask of an RPN code sequence over n variables."""
    full = (1 << (1 << n)) - 1
    vmasks = [var_mask(i, n) for i in range(n)]
    stack = []
    for c in codes:
        if c >= 0:
            stack.append(vmasks[c])
        else:
            j = -c - 1
            a = arities[j]
            tt = tts[j]
            args = stack[-a:]
            del stack[-a:]
            acc = 0
            for r in range(1 << a):
                if (tt >> r) & 1:
                    term = full
                    for k in range(a):
                        if (r >> (a - 1 - k)) & 1:
                            term &= args[k]
                        else:
                            term &= full & ~args[k]
                    acc |= term
            stack.append(acc)
    return stack[-1]


def compact_order(codes):
    """Distinct variable indices in order of first appearance."""
    order = []
    seen = set()
    for c in codes:
        if c >= 0 and c not in seen:
            seen.add(c)
            order.append(c)
    return order


def eval_mask_compact(codes, arities, tts):
    """Mask over the sentence's own variables, compacted by first appearance.

    Returns (mask, alpha) where alpha is the number of distinct variables.
    """
    order = compact_order(codes)
    slot = {v: i for i, v in enumerate(order)}
    remapped = [slot[c] if c >= 0 else c for c in codes]
    return eval_mask(remapped, len(order), arities, tts), len(order)


def _completion_table(n_vars, arities, length):
    """feas[r][d] = True iff depth d can reach depth 1 in exactly r tokens."""
    dmax = length + 2
    feas = [[False] * dmax for _ in range(length + 1)]
    feas[0][1] = True
    distinct = sorted(set(arities))
    for r in range(1, length + 1):
        prev = feas[r - 1]
        row = feas[r]
        for d in range(dmax):
            if n_vars > 0 and d + 1 < dmax and prev[d + 1]:
                row[d] = True
                continue
            for a in distinct:
                if d >= a and prev[d - a + 1]:
                    row[d] = True
                    break
    return feas


def enumerate_length(n_vars, arities, tts, length, exact_conns=-1, alpha=-1,
                     want_masks=True, compact=False):
    """All valid RPN code sequences of exactly ``length`` tokens, in
    lexicographic order.

    ``exact_conns`` (if >= 0) keeps only sentences with that many
    connective tokens; ``alpha`` (if >= 0) keeps only sentences with
    that many distinct variables.  Returns a list of
    (codes, mask_or_None, alpha) triples.  With ``compact=True`` the
    mask is over first-appearance-compacted variables.
    """
    feas = _completion_table(n_vars, arities, length)
    n_conns = len(arities)
    out = []
    codes = []

    def rec(depth, used, conns_used):
        pos = len(codes)
        if pos == length:
            a_x = bin(used).count("1")
            if alpha >= 0 and a_x != alpha:
                return
            if exact_conns >= 0 and conns_used != exact_conns:
                return
            if want_masks:
                if compact:
                    mask, a_x = eval_mask_compact(codes, arities, tts)
                else:
                    mask = eval_mask(codes, n_vars, arities, tts)
            else:
                mask = None
            out.append((tuple(codes), mask, a_x))
            return
        rem = length - pos - 1
        if exact_conns >= 0 and conns_used + rem + 1 < exact_conns:
            return
        if feas[rem][depth + 1]:
            for v in range(n_vars):
                codes.append(v)
                rec(depth + 1, used | (1 << v), conns_used)
                codes.pop()
        if exact_conns >= 0 and conns_used >= exact_conns:
            return
        for j in range(n_conns):
            a = arities[j]
            if depth >= a and feas[rem][depth - a + 1]:
                codes.append(-j - 1)
                rec(depth - a + 1, used, conns_used + 1)
                codes.pop()

    rec(0, 0, 0)
    return out


def census_length(n_vars, arities, tts, length, exact_conns, canonical=True):
    """Count valid sequences of exactly ``length`` tokens with exactly
    ``exact_conns`` connective tokens, without materializing them.

    With ``canonical=True`` only one leaf labeling per nonempty used
    variable subset is counted: the lexicographically smallest one,
    i.e. repeats of the smallest variable followed by the remaining
    used variables once each in increasing order.

    Returns (count, sum_pow2_alpha) where the second component is the
    sum of 2^alpha over counted sentences.
    """
    feas = _completion_table(n_vars, arities, length)
    n_conns = len(arities)
    total = 0
    pow2sum = 0

    # canonical-labeling DFS state: last leaf value seen and whether the
    # strictly-increasing tail has started; ``used`` is the bitmask of
    # variables used so far (its lowest set bit is the repeated head).
    def rec(pos, depth, conns_used, used, last, in_tail):
        nonlocal total, pow2sum
        if pos == length:
            if conns_used == exact_conns:
                total += 1
                pow2sum += 1 << bin(used).count("1")
            return
        rem = length - pos - 1
        if conns_used + rem + 1 < exact_conns:
            return
        if feas[rem][depth + 1]:
            for v in range(n_vars):
                if canonical and used:
                    if in_tail or v != last:
                        if v <= last:
                            continue
                        tail = True
                    else:
                        tail = False
                else:
                    tail = in_tail
                rec(pos + 1, depth + 1, conns_used, used | (1 << v), v, tail)
        if conns_used >= exact_conns:
            return
        for j in range(n_conns):
            a = arities[j]
            if depth >= a and feas[rem][depth - a + 1]:
                rec(pos + 1, depth - a + 1, conns_used + 1, used, last,
                    in_tail)

    rec(0, 0, 0, 0, -1, False)
    return total, pow2sum


def count_length(n_vars, arities, length):
    """Number of valid RPN sequences of exactly ``length`` tokens."""
    ways = {0: 1}
    distinct = {}
    for a in arities:
        distinct[a] = distinct.get(a, 0) + 1
    for _ in range(length):
        nxt = {}
        for d, c in ways.items():
            if n_vars:
                nxt[d + 1] = nxt.get(d + 1, 0) + c * n_vars
            for a, mult in distinct.items():
                if d >= a:
                    nd = d - a + 1
                    nxt[nd] = nxt.get(nd, 0) + c * mult
        ways = nxt
    return ways.get(1, 0)
