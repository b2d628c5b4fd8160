//! Laser communication terminal catalog.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CATALOG_CSV: &str = include_str!("../../data/terminals.csv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminalSpec {
    pub vendor: String,
    pub name: String,
    pub capacity_gbps: f64,
    pub max_link_km: f64,
    pub standard: Option<String>,
    /// Whether the vendor ships an acquisition/tracking/pointing subsystem.
    pub atp_available: Option<bool>,
}

impl TerminalSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.capacity_gbps.is_finite() && self.capacity_gbps > 0.0) {
            return Err(Error::domain(format!("terminal {} capacity must be > 0", self.name)));
        }
        if !(self.max_link_km.is_finite() && self.max_link_km > 0.0) {
            return Err(Error::domain(format!("terminal {} range must be > 0", self.name)));
        }
        Ok(())
    }
}

/// The bundled catalog: Mynaric CONDOR, Tesat LCT 135 and SmartLCT, General Atomics 1550 nm LCT.
pub fn terminal_catalog() -> Vec<TerminalSpec> {
    read_terminals(CATALOG_CSV.as_bytes()).expect("bundled terminal catalog is well formed")
}

/// Case-insensitive lookup by terminal name.
pub fn find_terminal(name: &str) -> Result<TerminalSpec> {
    terminal_catalog()
        .into_iter()
        .find(|t| t.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownTerminal(name.to_string()))
}

/// Terminals that reach `distance_km` with at least `required_gbps`,
/// highest capacity first, then longest range.
pub fn feasible_terminals(distance_km: f64, required_gbps: f64) -> Result<Vec<TerminalSpec>> {
    if !(distance_km > 0.0 && required_gbps > 0.0) {
        return Err(Error::domain("distance and capacity must be > 0"));
    }
    let mut out: Vec<_> = terminal_catalog()
        .into_iter()
        .filter(|t| t.max_link_km >= distance_km && t.capacity_gbps >= required_gbps)
        .collect();
    out.sort_by(|a, b| {
        b.capacity_gbps
            .total_cmp(&a.capacity_gbps)
            .then(b.max_link_km.total_cmp(&a.max_link_km))
    });
    Ok(out)
}

pub fn read_terminals<R: Read>(input: R) -> Result<Vec<TerminalSpec>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let t: TerminalSpec = row?;
        t.validate()?;
        out.push(t);
    }
    Ok(out)
}

/// Writes terminals in the bundled catalog's CSV layout. Numbers use the
/// shortest representation that parses back to the same value.
pub fn write_terminals<W: Write>(terminals: &[TerminalSpec], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record([
        "vendor",
        "name",
        "capacity_gbps",
        "max_link_km",
        "standard",
        "atp_available",
    ])?;
    for t in terminals {
        w.write_record([
            t.vendor.clone(),
            t.name.clone(),
            t.capacity_gbps.to_string(),
            t.max_link_km.to_string(),
            t.standard.clone().unwrap_or_default(),
            t.atp_available.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ts: &[TerminalSpec]) -> Vec<&str> {
        ts.iter().map(|t| t.name.as_str()).collect()
    }

    #[test]
    fn catalog_contents() {
        let c = terminal_catalog();
        assert_eq!(names(&c), ["CONDOR", "LCT 135", "SmartLCT", "1550 nm LCT"]);
        let condor = &c[0];
        assert_eq!(condor.vendor, "Mynaric");
        assert_eq!((condor.capacity_gbps, condor.max_link_km), (10.0, 8_000.0));
        assert_eq!(condor.standard.as_deref(), Some("Ethernet IEEE 802.3"));
        assert_eq!(condor.atp_available, Some(true));
        assert_eq!((c[1].capacity_gbps, c[1].max_link_km), (1.8, 80_000.0));
        assert_eq!((c[2].capacity_gbps, c[2].max_link_km), (1.8, 45_000.0));
        assert_eq!((c[3].capacity_gbps, c[3].max_link_km), (5.0, 2_500.0));
        assert!(c[1..].iter().all(|t| t.standard.is_none() && t.atp_available.is_none()));
    }

    #[test]
    fn feasibility_examples() {
        assert_eq!(names(&feasible_terminals(8_000.0, 10.0).unwrap()), ["CONDOR"]);
        assert_eq!(
            names(&feasible_terminals(2_500.0, 5.0).unwrap()),
            ["CONDOR", "1550 nm LCT"]
        );
        assert!(feasible_terminals(100_000.0, 1.0).unwrap().is_empty());
        assert_eq!(
            names(&feasible_terminals(1_000.0, 1.0).unwrap()),
            ["CONDOR", "1550 nm LCT", "LCT 135", "SmartLCT"]
        );
        assert!(feasible_terminals(0.0, 1.0).is_err());
    }

    #[test]
    fn export_matches_bundled_file() {
        let mut buf = Vec::new();
        write_terminals(&terminal_catalog(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), CATALOG_CSV);
    }

    #[test]
    fn lookup() {
        assert_eq!(find_terminal("lct 135").unwrap().max_link_km, 80_000.0);
        assert!(matches!(find_terminal("x"), Err(Error::UnknownTerminal(_))));
    }

    #[test]
    fn rejects_bad_rows() {
        let bad = "vendor,name,capacity_gbps,max_link_km,standard,atp_available\nA,B,0,10,,\n";
        assert!(read_terminals(bad.as_bytes()).is_err());
    }
}
