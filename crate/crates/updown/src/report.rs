//! Text and JSON renderings of a [`PropertyReport`].
//!
//! The text form is one `label  value` pair per line with a fixed label
//! column, followed by the per-line table. It is golden-tested, so keep it
//! stable.

use std::fmt::Write;

use updown_core::verify::PropertyReport;

const LABEL: usize = 21;

fn verdict(yes: bool, color: bool) -> &'static str {
    match (yes, color) {
        (true, false) => "yes",
        (false, false) => "no",
        (true, true) => "\x1b[32myes\x1b[0m",
        (false, true) => "\x1b[31mno\x1b[0m",
    }
}

fn number(v: Option<u128>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// Line-oriented report. ANSI colour is only used when `color` is set.
pub fn text(report: &PropertyReport, color: bool) -> String {
    let mut out = String::new();
    let mut field = |label: &str, value: &str| {
        let _ = writeln!(out, "{label:<LABEL$}{value}");
    };
    field("order", &report.order.to_string());
    field("width", &report.width.to_string());
    field("s1", &number(report.s1));
    field("s2", &number(report.s2));
    field("magic", verdict(report.is_magic, color));
    field("bimagic", verdict(report.is_bimagic, color));
    field("pandiagonal", verdict(report.is_pandiagonal, color));
    field(
        "pandiagonal bimagic",
        verdict(report.is_pandiagonal_bimagic, color),
    );
    for block in &report.block_results {
        field(
            &format!("blocks {0}x{0}", block.k),
            &number(block.common_sum),
        );
    }
    field(
        "palindromic entries",
        verdict(report.all_entries_palindromic, color),
    );
    field(
        "distinct entries",
        verdict(report.all_entries_distinct, color),
    );
    field("rotation closed", verdict(report.rotation_closed, color));

    let sum_width = report
        .line_sums
        .iter()
        .map(|l| l.sum.to_string().len())
        .max()
        .unwrap_or(1);
    out.push_str("lines\n");
    for line in &report.line_sums {
        let _ = writeln!(
            out,
            "  {:<17}{:>sum_width$}  {}",
            line.line.to_string(),
            line.sum,
            line.sum_of_squares
        );
    }
    out
}

pub fn json(report: &PropertyReport) -> serde_json::Value {
    serde_json::to_value(report).expect("reports always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use updown_core::verify::{self, BlockResult};
    use updown_core::Square;

    fn lo_shu() -> Square {
        Square::from_rows(&[["10", "22", "01"], ["02", "11", "20"], ["21", "00", "12"]]).unwrap()
    }

    #[test]
    fn golden_text() {
        let r = verify::report(&lo_shu(), &[3]).unwrap();
        let expected = "\
order                3
width                2
s1                   33
s2                   -
magic                yes
bimagic              no
pandiagonal          no
pandiagonal bimagic  no
blocks 3x3           99
palindromic entries  no
distinct entries     yes
rotation closed      yes
lines
  row 0            33  585
  row 1            33  525
  row 2            33  585
  col 0            33  545
  col 1            33  605
  col 2            33  545
  diagonal         33  365
  anti-diagonal    33  563
";
        assert_eq!(text(&r, false), expected);
        assert!(text(&r, true).contains("\x1b[32myes\x1b[0m"));
    }

    #[test]
    fn json_has_every_field() {
        let r = verify::report(&lo_shu(), &[1, 3]).unwrap();
        let v = json(&r);
        for key in [
            "order",
            "width",
            "s1",
            "s2",
            "is_magic",
            "is_bimagic",
            "is_pandiagonal",
            "is_pandiagonal_bimagic",
            "block_results",
            "all_entries_palindromic",
            "all_entries_distinct",
            "rotation_closed",
            "line_sums",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["s1"], 33);
        assert!(v["s2"].is_null());
        assert_eq!(v["line_sums"][0]["line"]["kind"], "row");
        assert_eq!(v["block_results"][1]["common_sum"], 99);
    }

    #[test]
    fn large_sums_print_exactly() {
        // the published composite constants, formatted without rounding
        let mut r = verify::report(&lo_shu(), &[]).unwrap();
        r.s1 = Some(222_222_220);
        r.block_results = vec![
            BlockResult {
                k: 4,
                common_sum: Some(55_555_555),
            },
            BlockResult {
                k: 5,
                common_sum: Some(44_444_444),
            },
        ];
        let t = text(&r, false);
        assert!(t.contains("s1                   222222220\n"));
        assert!(t.contains("blocks 4x4           55555555\n"));
        assert!(t.contains("blocks 5x5           44444444\n"));
        assert_eq!(json(&r)["s1"], 222_222_220u64);
    }
}
