use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use super::{Eri, MolecularIntegrals};
use crate::error::{Error, Result};

/// Entries that repeat with values further apart than this are rejected.
const DUPLICATE_TOL: f64 = 1e-10;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    tok.replace(['D', 'd'], "E")
        .parse::<f64>()
        .map_err(|_| perr(line, format!("bad real {:?}", tok)))
}

struct Header {
    norb: usize,
    nelec: usize,
    body_start: usize,
}

fn parse_header(lines: &[&str]) -> Result<Header> {
    let first = lines
        .iter()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| perr(1, "empty file"))?;
    if !lines[first].trim_start().to_ascii_uppercase().starts_with("&FCI") {
        return Err(perr(first + 1, "expected &FCI namelist"));
    }
    let mut text = String::new();
    let mut end = None;
    for (i, l) in lines.iter().enumerate().skip(first) {
        let u = l.trim();
        let upper = u.to_ascii_uppercase();
        if let Some(pos) = upper.find("&END").or_else(|| (u == "/" || u.ends_with('/')).then(|| u.len() - 1)) {
            text.push_str(&u[..pos]);
            end = Some(i);
            break;
        }
        text.push_str(u);
        text.push(' ');
    }
    let end = end.ok_or_else(|| perr(first + 1, "unterminated &FCI namelist"))?;
    let text = text.trim_start();
    let text = &text[4..];

    // KEY=v1,v2,... ; values continue until the next KEY=
    let mut fields: HashMap<String, Vec<String>> = HashMap::new();
    let mut key: Option<String> = None;
    for tok in text.split([',', ' ']).filter(|t| !t.is_empty()) {
        if let Some((k, v)) = tok.split_once('=') {
            let k = k.trim().to_ascii_uppercase();
            fields.entry(k.clone()).or_default();
            if !v.is_empty() {
                fields.get_mut(&k).unwrap().push(v.to_string());
            }
            key = Some(k);
        } else if tok == "=" {
            continue;
        } else if let Some(k) = &key {
            fields.get_mut(k).unwrap().push(tok.to_string());
        } else {
            return Err(perr(first + 1, format!("unexpected token {:?} in header", tok)));
        }
    }
    let get = |k: &str| -> Result<usize> {
        let v = fields
            .get(k)
            .and_then(|v| v.first())
            .ok_or_else(|| perr(first + 1, format!("header missing {}", k)))?;
        v.parse::<usize>()
            .map_err(|_| perr(first + 1, format!("bad {} value {:?}", k, v)))
    };
    let norb = get("NORB")?;
    let nelec = get("NELEC")?;
    if norb == 0 {
        return Err(perr(first + 1, "NORB must be positive"));
    }
    if let Some(ms2) = fields.get("MS2").and_then(|v| v.first()) {
        if ms2.parse::<i64>().map_err(|_| perr(first + 1, "bad MS2"))? != 0 {
            return Err(perr(first + 1, "only MS2=0 is supported"));
        }
    }
    Ok(Header {
        norb,
        nelec,
        body_start: end + 1,
    })
}

/// Parse FCIDUMP text. Indices are 1-based; zeros select one-electron and
/// nuclear-repulsion entries.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let lines: Vec<&str> = text.lines().collect();
    let hdr = parse_header(&lines)?;
    let n = hdr.norb;
    let mut h = DMatrix::zeros(n, n);
    let mut g = Eri::zeros(n);
    let mut e_nuc = None;
    // canonical key -> (value, line)
    let mut seen: HashMap<[usize; 4], (f64, usize)> = HashMap::new();

    for (i, raw) in lines.iter().enumerate().skip(hdr.body_start) {
        let lineno = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 5 {
            return Err(perr(lineno, format!("expected 5 fields, found {}", toks.len())));
        }
        let v = parse_real(toks[0], lineno)?;
        let mut idx = [0usize; 4];
        for k in 0..4 {
            idx[k] = toks[k + 1]
                .parse()
                .map_err(|_| perr(lineno, format!("bad index {:?}", toks[k + 1])))?;
            if idx[k] > n {
                return Err(perr(lineno, format!("index {} exceeds NORB={}", idx[k], n)));
            }
        }
        let [p, q, r, s] = idx;
        let key = match (p, q, r, s) {
            (0, 0, 0, 0) => [0, 0, 0, 0],
            (_, _, 0, 0) if p > 0 && q > 0 => [p.max(q), p.min(q), 0, 0],
            _ if p > 0 && q > 0 && r > 0 && s > 0 => {
                let a = (p.max(q), p.min(q));
                let b = (r.max(s), r.min(s));
                let (x, y) = if a >= b { (a, b) } else { (b, a) };
                [x.0, x.1, y.0, y.1]
            }
            _ => return Err(perr(lineno, format!("invalid index pattern {} {} {} {}", p, q, r, s))),
        };
        if let Some((old, at)) = seen.get(&key) {
            if (old - v).abs() > DUPLICATE_TOL {
                let what = if key[2] == 0 && key[0] != 0 {
                    format!("h not symmetric: h[{},{}]", p, q)
                } else {
                    format!("entry {} {} {} {}", p, q, r, s)
                };
                return Err(perr(
                    lineno,
                    format!("{} = {} conflicts with {} on line {}", what, v, old, at),
                ));
            }
            continue;
        }
        seen.insert(key, (v, lineno));
        match key {
            [0, 0, 0, 0] => e_nuc = Some(v),
            [a, b, 0, 0] => {
                h[(a - 1, b - 1)] = v;
                h[(b - 1, a - 1)] = v;
            }
            [a, b, c, d] => g.set_sym(a - 1, b - 1, c - 1, d - 1, v),
        }
    }
    Ok(MolecularIntegrals {
        n_electrons: hdr.nelec,
        h,
        g,
        e_nuc: e_nuc.unwrap_or(0.0),
    })
}

pub fn read_fcidump(path: &Path) -> Result<MolecularIntegrals> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_fcidump(&text)
}

/// Serialize the unique entries above `1e-15` in magnitude.
pub fn write_fcidump(mi: &MolecularIntegrals) -> String {
    let n = mi.n_spatial();
    let mut s = String::new();
    let orbsym = vec!["1"; n].join(",");
    let _ = writeln!(
        s,
        " &FCI NORB={},NELEC={},MS2=0,\n  ORBSYM={},\n  ISYM=1,\n &END",
        n, mi.n_electrons, orbsym
    );
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for t in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + t {
                        continue;
                    }
                    let v = mi.g.get(p, q, r, t);
                    if v.abs() > 1e-15 {
                        let _ = writeln!(s, "{:.17e} {} {} {} {}", v, p + 1, q + 1, r + 1, t + 1);
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = mi.h[(p, q)];
            if v.abs() > 1e-15 {
                let _ = writeln!(s, "{:.17e} {} {} 0 0", v, p + 1, q + 1);
            }
        }
    }
    let _ = writeln!(s, "{:.17e} 0 0 0 0", mi.e_nuc);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2: &str = include_str!("../../tests/data/h2_sto3g.fcidump");

    #[test]
    fn nuclear_only() {
        let mi = parse_fcidump("&FCI NORB=1,NELEC=0,MS2=0 &END\n 0.5 0 0 0 0\n").unwrap();
        assert_eq!(mi.e_nuc, 0.5);
        assert_eq!(mi.h[(0, 0)], 0.0);
        assert_eq!(mi.g.get(0, 0, 0, 0), 0.0);
    }

    #[test]
    fn single_entry_expands() {
        let text = "&FCI NORB=2,NELEC=2,\n/\n 0.7 2 1 1 1\n";
        let mi = parse_fcidump(text).unwrap();
        for (p, q, r, s) in [
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
        ] {
            assert_eq!(mi.g.get(p, q, r, s), 0.7);
        }
        assert!(mi.g.symmetry_error() == 0.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "&FCI NORB=2,NELEC=2 &END\n 0.1 1 1 1 1\n 0.2 3 1 1 1\n";
        match parse_fcidump(bad).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        let dup = "&FCI NORB=2,NELEC=2 &END\n 0.1 2 1 0 0\n 0.3 1 2 0 0\n";
        match parse_fcidump(dup).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("h not symmetric"));
            }
            e => panic!("{e}"),
        }
        assert!(parse_fcidump("NORB=2").is_err());
        assert!(parse_fcidump("&FCI NELEC=2 &END\n").is_err());
    }

    #[test]
    fn h2_hf_energy_closed_form() {
        let mi = parse_fcidump(H2).unwrap();
        assert!(mi.issues().is_empty());
        let e = mi.e_nuc + 2.0 * mi.h[(0, 0)] + mi.g.get(0, 0, 0, 0);
        assert!((e - -1.1166843870853405).abs() < 1e-9);
    }

    #[test]
    fn round_trip_is_fixed_point() {
        let a = parse_fcidump(H2).unwrap();
        let b = parse_fcidump(&write_fcidump(&a)).unwrap();
        let c = parse_fcidump(&write_fcidump(&b)).unwrap();
        assert!((&a.h - &b.h).amax() < 1e-12);
        for (x, y) in a.g.as_slice().iter().zip(b.g.as_slice()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert_eq!(b, c);
    }
}
