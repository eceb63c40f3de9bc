#!/usr/bin/env python3
"""Solve an LP-format model with HiGHS and print the optimal objective.

Exit status 0 with the objective on stdout when optimal, 1 otherwise.
"""
import sys

import highspy


def main(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    if h.readModel(path) != highspy.HighsStatus.kOk:
        print("cannot read " + path, file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print(h.modelStatusToString(status), file=sys.stderr)
        return 1
    print(repr(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
