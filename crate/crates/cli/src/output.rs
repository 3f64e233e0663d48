//! JSON and table rendering.

use nlq_core::BigRational;
use serde_json::Value;

/// Integers are written as bare JSON numbers of any size, everything else
/// as a rational string.
pub fn coeff_json(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\"{c}\"")
    }
}

pub fn coeffs_json(cs: &[BigRational]) -> String {
    let parts: Vec<String> = cs.iter().map(coeff_json).collect();
    format!("[{}]", parts.join(", "))
}

/// Right-aligned columns under a header row.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

/// Columns `n, name_1, name_2, ...` for series sharing an index.
pub fn series_table(names: &[&str], cols: &[Vec<String>]) -> String {
    let len = cols.iter().map(Vec::len).max().unwrap_or(0);
    let mut header = vec!["n"];
    header.extend_from_slice(names);
    let rows: Vec<Vec<String>> = (0..len)
        .map(|n| {
            let mut r = vec![n.to_string()];
            r.extend(cols.iter().map(|c| c.get(n).cloned().unwrap_or_default()));
            r
        })
        .collect();
    table(&header, &rows)
}

/// Flat `key  value` listing of a JSON object; nested values stay JSON.
pub fn object_table(v: &Value) -> String {
    let rows: Vec<Vec<String>> = match v.as_object() {
        Some(map) => map
            .iter()
            .map(|(k, v)| {
                let s = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                vec![k.clone(), s]
            })
            .collect(),
        None => vec![vec![String::new(), v.to_string()]],
    };
    let width = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
    rows.iter().map(|r| format!("{:<width$}  {}", r[0], r[1])).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_stay_numeric() {
        let cs = [BigRational::from_integer(240.into()), BigRational::new(3.into(), 2.into())];
        assert_eq!(coeffs_json(&cs), "[240, \"3/2\"]");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["n", "c"], &[vec!["0".into(), "1".into()], vec!["1".into(), "240".into()]]);
        assert_eq!(t, "n    c\n0    1\n1  240");
    }
}
