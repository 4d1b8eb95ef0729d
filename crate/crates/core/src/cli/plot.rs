//! Generic plotting script emitted next to sweep output.

use std::path::Path;

pub fn script(case: &str, envelope_csv: &Path) -> String {
    format!(
        r#"# Plot the envelope sweep for {case}.
# Requires matplotlib; reads the CSV written by `tangle-roof sweep`.
import csv
import matplotlib.pyplot as plt

rows = list(csv.DictReader(open(r"{path}")))
p = [float(r["p"]) for r in rows]
for col, style in (("min", "-"), ("hull", "--"), ("reference", ":")):
    plt.plot(p, [float(r[col]) for r in rows], style, label=col)
plt.xlabel("p")
plt.title("{case}")
plt.legend()
plt.savefig(r"{path}.png", dpi=150)
"#,
        path = envelope_csv.display()
    )
}
