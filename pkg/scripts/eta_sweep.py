"""Eta-expansion over every type up to a connective bound.

For each type A the cut-free weak derivation of the focused identity is
replayed, and the plain identity figure(A) => A is proved by both engines.
Unlike the acceptance test this visits every type, not one per renaming
class, so it takes far longer.

    python3 scripts/eta_sweep.py --max-connectives 3 --atoms S,N,CN,a,b
"""

import argparse
import json
import sys
import time

from dafocus.calculus import DAF, prove_all, replay
from dafocus.config import Sequent, figure
from dafocus.focus import prove_focused
from dafocus.formula import Bias, to_text
from dafocus.generate import atoms_for, formulas
from dafocus.transform import eta_expand, identity_sequent


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-connectives", type=int, default=3)
    ap.add_argument("--atoms", default="S,N,CN,a,b")
    ap.add_argument("--positive", default="", help="comma-separated atoms with positive bias")
    ap.add_argument("--every", type=int, default=50000)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    names = args.atoms.split(",")
    pos = set(filter(None, args.positive.split(",")))
    atoms = atoms_for(names, [Bias.POS if n in pos else Bias.NEG for n in names])
    start = time.time()
    checked, failures = 0, []
    for n in range(args.max_connectives + 1):
        for f in formulas(n, atoms):
            checked += 1
            s = Sequent(figure(f), f)
            try:
                ok = (replay(eta_expand(f), DAF) == identity_sequent(f)
                      and prove_all(s, max_proofs=1).provable
                      and prove_focused(s, max_proofs=1).provable)
            except Exception as e:  # recorded with the type, not raised
                ok = False
                print(f"ERROR {to_text(f)}: {type(e).__name__}: {e}", flush=True)
            if not ok:
                failures.append(to_text(f))
                print(f"FAIL {to_text(f)}", flush=True)
            if checked % args.every == 0:
                print(f"[{time.time() - start:8.0f}s] checked={checked} failures={len(failures)}", flush=True)
    summary = {"max_connectives": args.max_connectives, "atoms": names, "positive": sorted(pos),
               "checked": checked, "failures": failures, "seconds": round(time.time() - start, 1)}
    text = json.dumps(summary, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if not failures else 1


if __name__ == "__main__":
    sys.exit(main())
