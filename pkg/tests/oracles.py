"""Independent oracles over raw Ackermann codes (plain ints, no SetTerm)."""
from functools import lru_cache


def members(n: int) -> list[int]:
    return [i for i in range(n.bit_length()) if n >> i & 1]


def from_members(ms) -> int:
    out = 0
    for m in ms:
        out |= 1 << m
    return out


@lru_cache(maxsize=None)
def rank(n: int) -> int:
    return 0 if n == 0 else 1 + max(rank(m) for m in members(n))


def singleton(a: int) -> int:
    return 1 << a


def kpair(a: int, b: int) -> int:
    return from_members({singleton(a), (1 << a) | (1 << b)})


def unpair(z: int):
    """(a, b) if z codes a Kuratowski pair, else None."""
    ms = members(z)
    if len(ms) == 1:
        s = members(ms[0])
        return (s[0], s[0]) if len(s) == 1 else None
    if len(ms) != 2:
        return None
    small, big = sorted(ms, key=lambda m: len(members(m)))
    s, b = members(small), members(big)
    if len(s) != 1 or len(b) != 2 or s[0] not in b:
        return None
    other = b[0] if b[1] == s[0] else b[1]
    return s[0], other


def function_graph(z: int):
    """dict domain -> value if z codes a function graph, else None."""
    out = {}
    for m in members(z):
        p = unpair(m)
        if p is None or p[0] in out:
            return None
        out[p[0]] = p[1]
    return out


def psi_fixpoint(domain_size: int, n: int, kmax: int):
    """k-entity and k-class sets over codes < domain_size in V_n, bottom up.

    Every component of a term in the domain is again in the domain (pair
    components and graph domains have smaller rank), so the restriction
    is exact.
    """
    dom = range(domain_size)
    small = {x for x in dom if rank(x) < n}
    entities, classes = [small], [small]
    for k in range(1, kmax + 1):
        cls = {x for x in dom if all(m in entities[k - 1] for m in members(x))}
        ent = set(small) | cls
        changed = True
        while changed:
            changed = False
            for x in dom:
                if x in ent:
                    continue
                p = unpair(x)
                ok = p is not None and p[0] in ent and p[1] in ent
                if not ok:
                    g = function_graph(x)
                    ok = g is not None and from_members(g) in cls and all(v in ent for v in g.values())
                if ok:
                    ent.add(x)
                    changed = True
        classes.append(cls)
        entities.append(ent)
    return entities, classes
