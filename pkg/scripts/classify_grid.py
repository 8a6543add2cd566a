"""Classify every integer cyclic quiver cyc(p,q,r) with 0 <= p <= q <= r <= N."""
import argparse
from collections import Counter

from quiver3.classify import classify
from quiver3.quiver import Quiver


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=12)
    parser.add_argument("--list-cyclic", action="store_true", help="print every mutation-cyclic triple")
    args = parser.parse_args()
    counts = Counter()
    for p in range(args.max + 1):
        for q in range(p, args.max + 1):
            for r in range(q, args.max + 1):
                report = classify(Quiver.cyclic(p, q, r))
                counts[(report.verdict, report.geometry, report.isometry_type)] += 1
                if args.list_cyclic and report.verdict == "MutationCyclic":
                    print(f"cyc({p},{q},{r})  C={report.markov}  {report.isometry_type}")
    for (verdict, geometry, iso), n in sorted(counts.items(), key=lambda kv: str(kv[0])):
        print(f"{n:>5}  {verdict:<15} {geometry:<11} {iso or ''}")


if __name__ == "__main__":
    main()
