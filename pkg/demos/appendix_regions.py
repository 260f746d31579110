"""Print the complete region catalogue as a Markdown table.

For each of the eight sign regions of the two-mode reduction this lists
the defining sign pattern, the transition type, and the steady-state
families with their counts, amplitudes, eigenvalues and stability.  The
output is ready to paste into a Markdown document.
"""

from mhdconv.transition_real import region_table

QUANTITIES = ("a", "b", "a-b", "4a-b")


def sign_pattern(signs):
    return ", ".join(
        f"{q} {'>' if signs[q] > 0 else '<'} 0" for q in QUANTITIES
    )


def region_rows(rows):
    print("| region | signs | type | stable state above onset |")
    print("|---|---|---|---|")
    for row in rows:
        stable = "yes" if any(
            s.stable and s.exists_supercritical for s in row["states"]
        ) else "no"
        print(
            f"| {row['label']} | {sign_pattern(row['signs'])} "
            f"| {row['transition_type']} | {stable} |"
        )


def inventory_rows(rows):
    print("\n| region | family | axis | count | amplitude unit |"
          " eigenvalues | side | stable |")
    print("|---|---|---|---|---|---|---|---|")
    for row in rows:
        for fam in row["states"]:
            eigs = ", ".join(f"{e:.4f}" for e in fam.eigenvalues_unit)
            side = "above" if fam.exists_supercritical else "below"
            print(
                f"| {row['label']} | {fam.pattern} | {fam.axis} "
                f"| {fam.count} | {fam.amplitude_unit:.4f} | {eigs} "
                f"| {side} | {'yes' if fam.stable else 'no'} |"
            )


if __name__ == "__main__":
    rows = region_table()
    region_rows(rows)
    inventory_rows(rows)
