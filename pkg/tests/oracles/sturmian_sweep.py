"""Sweep mu for x -> 9x/10 + mu (mod 1) and freeze a Sturmian-looking parameter.

Standalone on purpose: plain Python integers, no import of the package under
test.  Stage 1 scans every mu = k/m (m in MODULI) for 3000 steps and measures
the period of the itinerary tail.  Stage 2 recomputes the longest-period
candidates at the full horizon and counts all distinct factors of the
itinerary for n <= N_MAX.  The first candidate with p(n) = n + 1 throughout
is written to tests/golden/sturmian_mu.json.

Run:  python3 tests/oracles/sturmian_sweep.py
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

LAM_NUM, LAM_DEN = 9, 10
MODULI = (97, 101, 211, 1009)
SCAN_STEPS = 3000
HORIZON = 10**5
N_MAX = 30
TOP = 6


def itinerary(p: int, q: int, steps: int) -> bytes:
    """Symbols of x_0 = mu, ..., x_{steps-1}; 1 left of the cut, 2 right of it.

    x_k = a / (q * 10^k).  The cut c = (1 - mu) / lam; x > c exactly when
    lam*x + mu > 1.  Landing on the cut itself aborts the sweep entry.
    """
    a, den, pw = p, q, p  # pw = p * 10^k
    out = bytearray()
    for _ in range(steps):
        # lam*x + mu = (9a + 10*pw) / (10*den)
        b = LAM_NUM * a + LAM_DEN * pw
        den10 = LAM_DEN * den
        if b == den10:
            raise ArithmeticError("orbit lands on the cut")
        if b > den10:
            out.append(2)
            b -= den10
        else:
            out.append(1)
        a, den, pw = b, den10, LAM_DEN * pw
    return bytes(out)


def tail_period(word: bytes, window: int = 1000) -> int | None:
    tail = word[-window:]
    for p in range(1, window // 2 + 1):
        if tail[p:] == tail[:-p]:
            return p
    return None


def profile(word: bytes, n_max: int) -> list[int]:
    return [len({word[i : i + n] for i in range(len(word) - n + 1)}) for n in range(1, n_max + 1)]


def main() -> int:
    cands = []
    for m in MODULI:
        for k in range(1, m):
            mu = Fraction(k, m)
            if not Fraction(1, 10) < mu < 1:
                continue
            try:
                w = itinerary(mu.numerator, mu.denominator, SCAN_STEPS)
            except ArithmeticError:
                continue
            per = tail_period(w)
            if per is not None:
                cands.append((per, mu))
    cands.sort(key=lambda t: (-t[0], t[1]))
    print("longest tail periods:", [(p, str(mu)) for p, mu in cands[:TOP]], file=sys.stderr)
    for per, mu in cands[:TOP]:
        w = itinerary(mu.numerator, mu.denominator, HORIZON)
        prof = profile(w, N_MAX)
        ok = all(v == n + 1 for n, v in enumerate(prof, start=1))
        print(f"mu={mu} tail period {per}: sturmian to {N_MAX}: {ok}", file=sys.stderr)
        if ok:
            doc = {
                "lambda": f"{LAM_NUM}/{LAM_DEN}",
                "mu": f"{mu.numerator}/{mu.denominator}",
                "horizon": HORIZON,
                "n_max": N_MAX,
                "profile": prof,
                "tail_period_at_scan": per,
                "itinerary_head": "".join(map(str, w[:64])),
            }
            out = Path(__file__).resolve().parents[1] / "golden" / "sturmian_mu.json"
            out.write_text(json.dumps(doc, indent=2) + "\n")
            print(f"wrote {out}", file=sys.stderr)
            return 0
    print("no candidate found", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
