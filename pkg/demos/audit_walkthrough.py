"""Walk through a full hypothesis audit of one bundled instance.

Run:  python3 demos/audit_walkthrough.py [example1 .. example6]
"""

import json
import sys
from importlib import resources

from iwartin import ArtinInstance, full_audit


def main():
    name = sys.argv[1] if len(sys.argv) > 1 else "example1"
    ref = resources.files("iwartin").joinpath("instances", f"{name}.json")
    data = json.loads(ref.read_text())

    print(f"== {name}: p = {data['prime']}, f = {data['polynomial']} ==")
    inst = ArtinInstance.from_json(data)
    print(f"ambient group order {inst.group.order} x {inst.p - 1} units, "
          f"local subgroup order {inst.decomposition.order}")

    report = full_audit(inst)
    print()
    print(report.summary())
    print()
    print("what the verdicts mean:")
    print("  HYP1            p is odd and prime to the full group order")
    print("  totally_complex conjugation acts nontrivially")
    print("  HYP2a           the chosen local subspace has dimension d+,")
    print("                  strictly between 0 and d")
    print("  HYP2b           its constituents avoid the complement's")
    print("  H0_V / H0_U     no trivial local constituent on either side")
    print("  frobenius_diag  mod-p factor profile vs the local generator")


if __name__ == "__main__":
    main()
