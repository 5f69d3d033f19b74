#!/usr/bin/env python3
"""Convert the public NAS-Bench-201 release to the seki-tabular v1 format.

This is a documented stub: the NAS-Bench-201 archive (~2 GB,
`NAS-Bench-201-v1_1-096897.pth`, distributed with the nas-bench-201 PyPI
package) is not bundled with this repository, and the conversion requires
torch to unpickle it. Run this on a machine that has the archive:

    pip install nas-bench-201 torch
    python scripts/export_nasbench201.py NAS-Bench-201-v1_1-096897.pth \
        nas201_cifar10.tsv

Then enable the tabular acceptance criterion with:

    SEKI_NAS201_TABLE=nas201_cifar10.tsv ctest --test-dir build -R acceptance

The exported file declares metrics `cifar10-test:maximize` and
`cifar10-valid:maximize`; the best cifar10-test value over the full table is
94.37 (mean over the three published seeds of the best cell).
"""

import sys


HEADER = (
    "#seki-tabular v1\n#space nas201\n"
    "#metrics cifar10-test:maximize cifar10-valid:maximize\n"
)


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    archive, out_path = sys.argv[1], sys.argv[2]
    try:
        from nas_201_api import NASBench201API  # type: ignore
    except ImportError:
        print(
            "error: the nas-bench-201 package (and torch) must be installed "
            "to read the archive; see the module docstring.",
            file=sys.stderr,
        )
        return 1

    api = NASBench201API(archive, verbose=False)
    with open(out_path, "w", encoding="utf-8") as out:
        out.write(HEADER)
        for index in range(len(api)):
            arch = api.arch(index)  # already the canonical |op~i| string
            # Mean over the published training seeds, 200-epoch results.
            test = api.get_more_info(index, "cifar10", hp="200")["test-accuracy"]
            valid = api.get_more_info(
                index, "cifar10-valid", hp="200"
            )["valid-accuracy"]
            out.write(f"{arch}\t{test:.2f}\t{valid:.2f}\n")
    print(f"wrote {len(api)} rows to {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
