"""Write SVG drawings of a few realizations and mutation traces into a directory."""
import argparse
from pathlib import Path

from quiver3.geometry import mutate_realization, realize
from quiver3.quiver import parse_quiver
from quiver3.render import render

EXAMPLES = {
    "rotation_333": ("cyc(3,3,3)", [2, 1, 3]),
    "rotation_332": ("cyc(3,3,2)", [1, 3]),
    "sphere_110": ("acyc(1,1,0)", [2, 1, 3, 2, 1]),
    "euclidean_n5": ("acyc(2cos(pi/5),2cos(2pi/5),2cos(2pi/5))", [1, 2]),
    "hyperbolic_333": ("acyc(3,3,3)", [1, 2]),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="svg")
    args = parser.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (text, word) in EXAMPLES.items():
        Q = parse_quiver(text, exact=True)
        R = realize(Q)
        frames = [R]
        for k in word:
            R = mutate_realization(R, Q, k)
            Q = Q.mutate(k)
            frames.append(R)
        path = out / f"{name}.svg"
        path.write_text(render(frames), encoding="utf-8")
        print(f"{path}  {len(frames)} frames")


if __name__ == "__main__":
    main()
