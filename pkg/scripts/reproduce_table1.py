"""Print the finite mutation classes with 0 < C < 4: acyclic and cyclic classes and C."""
from quiver3.explore import SPHERICAL_ROWS, table1
from quiver3.quiver import parse_quiver


def main() -> None:
    for row, (seed, *_rest) in enumerate(SPHERICAL_ROWS, start=1):
        report = table1(parse_quiver(seed, exact=True)).to_json()
        print(f"row {row}: seed {seed}")
        print(f"  acyclic  {', '.join(report['acyclic_classes'])}")
        print(f"  cyclic   {', '.join(report['cyclic_classes'])}")
        print(f"  C        {report['C']}")
        print(f"  nodes    {report['strict_nodes']} strict, {report['sink_source_classes']} up to sink/source")


if __name__ == "__main__":
    main()
