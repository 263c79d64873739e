//! Listings and series dumps. Exact rationals serialize as `"p/q"` strings and complex
//! numbers as a pair of decimal strings tagged with their precision.

use std::io::Write;

use anyhow::{bail, Context};
use continuation::continued_series;
use cy_state::{cr_basis, enumerate_sectors, mu_isomorphism, CyBasisLabel, CySector};
use exact_kernel::{BigComplex, Rational};
use fjrw_series::{i_fjrw, i_h_series};
use gw_series::i_gw;
use lg_state::{narrow_sectors, w_degree, FjrwLabel, GroupElement};
use serde::{Deserialize, Serialize};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: String,
    pub im: String,
    pub digits: u32,
}

impl ComplexValue {
    pub fn new(v: &BigComplex) -> Self {
        let (re, im) = v.to_decimal_pair(v.digits() as usize);
        Self { re, im, digits: v.digits() }
    }

    pub fn parse(&self) -> Option<BigComplex> {
        BigComplex::parse_pair(&self.re, &self.im, self.digits)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LgSectorRecord {
    pub label: String,
    pub residues: String,
    pub w_degree: String,
    pub mu_inverse: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CySectorRecord {
    pub sector: String,
    pub dimension: usize,
    pub age: String,
    pub h_power: usize,
    pub cr_degree: String,
    pub mu: String,
}

pub fn lg_sectors() -> Vec<LgSectorRecord> {
    narrow_sectors()
        .into_iter()
        .map(|h| LgSectorRecord {
            label: h.name(),
            residues: h.element().to_string(),
            w_degree: w_degree(&h).to_string(),
            mu_inverse: cy_state::mu_inverse(&h).map(|l| l.to_string()),
        })
        .collect()
}

pub fn cy_sectors() -> anyhow::Result<Vec<CySectorRecord>> {
    cr_basis()
        .into_iter()
        .map(|l| {
            Ok(CySectorRecord {
                sector: l.sector.to_string(),
                dimension: l.sector.dimension(),
                age: l.sector.age().to_string(),
                h_power: l.h_power,
                cr_degree: l.cr_degree().to_string(),
                mu: mu_isomorphism(&l)?.name(),
            })
        })
        .collect()
}

pub fn cy_sector_count() -> usize {
    enumerate_sectors().len()
}

/// One coefficient of an I-function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub t_exp: Option<usize>,
    pub q_exp: Option<String>,
    pub z_exp: i64,
    pub h_power: usize,
    pub basis: String,
    pub residue_class: Option<u8>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassPrefactor {
    pub target: String,
    pub rho5: u8,
    pub residue_class: u8,
    pub z_shift: i64,
    /// Coefficients of `H^p`, multiplying `z^{z_shift - p}`.
    pub constant: Vec<ComplexValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesMetadata {
    pub variable: String,
    pub prefactor: String,
    pub classes: Vec<ClassPrefactor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub side: String,
    pub label: String,
    pub order: usize,
    pub metadata: SeriesMetadata,
    pub records: Vec<SeriesRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    Fjrw,
    Gw,
    Continued,
}

pub fn parse_fjrw_label(s: &str) -> anyhow::Result<FjrwLabel> {
    let g: GroupElement = s.parse().map_err(|e| anyhow::anyhow!("{e}")).with_context(|| format!("label {s}"))?;
    FjrwLabel::new(g).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn parse_sector(s: &str) -> anyhow::Result<CySector> {
    let g: GroupElement = s.parse().map_err(|e| anyhow::anyhow!("{e}")).with_context(|| format!("sector {s}"))?;
    Ok(CySector::new(g)?)
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn ifunc(side: Side, label: &str, order: usize, digits: u32) -> anyhow::Result<SeriesDump> {
    match side {
        Side::Fjrw => {
            let h = parse_fjrw_label(label)?;
            let s = i_h_series(&i_fjrw(order), &h)?;
            let mut records = Vec::new();
            for (n, lz) in s.coeffs().iter().enumerate() {
                for (z, v) in lz.iter() {
                    for (l, c) in v.iter() {
                        if *c != 0 {
                            records.push(SeriesRecord {
                                t_exp: Some(n),
                                q_exp: None,
                                z_exp: z,
                                h_power: 0,
                                basis: l.name(),
                                residue_class: None,
                                value: rational_string(c),
                            });
                        }
                    }
                }
            }
            Ok(SeriesDump {
                side: "fjrw".into(),
                label: h.name(),
                order,
                metadata: SeriesMetadata { variable: "t".into(), prefactor: "none".into(), classes: vec![] },
                records,
            })
        }
        Side::Gw => {
            let g = parse_sector(label)?;
            let s = i_gw(&g, order)?;
            let mut records = Vec::new();
            for comp in &s.components {
                for (n, p) in comp.coeffs.iter().enumerate() {
                    let q = Rational::from((i64::from(comp.rho5) + 5 * n as i64, 5));
                    for (h, c) in p.coeffs().iter().enumerate() {
                        if *c != 0 {
                            records.push(SeriesRecord {
                                t_exp: None,
                                q_exp: Some(q.to_string()),
                                z_exp: comp.z_shift - h as i64,
                                h_power: h,
                                basis: CyBasisLabel::new(comp.target, h).expect("power within dimension").to_string(),
                                residue_class: None,
                                value: rational_string(c),
                            });
                        }
                    }
                }
            }
            Ok(SeriesDump {
                side: "gw".into(),
                label: g.to_string(),
                order,
                metadata: SeriesMetadata { variable: "q".into(), prefactor: "q^(H/z), H-power h paired with z^(-h)".into(), classes: vec![] },
                records,
            })
        }
        Side::Continued => {
            let g = parse_sector(label)?;
            let s = continued_series(&g, order, digits)?;
            let mut records = Vec::new();
            let mut classes = Vec::new();
            for comp in &s.components {
                for class in &comp.classes {
                    let p = comp.prefactor.mul(&class.constant);
                    classes.push(ClassPrefactor {
                        target: comp.target.to_string(),
                        rho5: comp.rho5,
                        residue_class: class.k,
                        z_shift: comp.z_shift,
                        constant: p.coeffs().iter().map(ComplexValue::new).collect(),
                    });
                    for (n, c) in class.series.coeffs().iter().enumerate() {
                        if *c != 0 {
                            records.push(SeriesRecord {
                                t_exp: Some(n),
                                q_exp: None,
                                z_exp: comp.z_shift,
                                h_power: 0,
                                basis: comp.target.to_string(),
                                residue_class: Some(class.k),
                                value: rational_string(c),
                            });
                        }
                    }
                }
            }
            let b = &s.branch;
            Ok(SeriesDump {
                side: "continued".into(),
                label: g.to_string(),
                order,
                metadata: SeriesMetadata {
                    variable: "t".into(),
                    prefactor: format!("each class series times its constant; {}; {}; {}", b.xi, b.t, b.contour),
                    classes,
                },
                records,
            })
        }
    }
}

pub trait Row: Serialize {
    fn text(&self) -> String;
}

impl Row for LgSectorRecord {
    fn text(&self) -> String {
        format!("{:<8} {:<12} deg {:<3} mu^-1 {}", self.label, self.residues, self.w_degree, self.mu_inverse.as_deref().unwrap_or("-"))
    }
}

impl Row for CySectorRecord {
    fn text(&self) -> String {
        format!("{:<12} dim {} age {} H^{} deg {:<3} mu {}", self.sector, self.dimension, self.age, self.h_power, self.cr_degree, self.mu)
    }
}

impl Row for SeriesRecord {
    fn text(&self) -> String {
        let var = match (&self.t_exp, &self.q_exp) {
            (Some(t), _) => format!("t^{t}"),
            (None, Some(q)) => format!("q^{q}"),
            _ => String::new(),
        };
        let class = self.residue_class.map(|k| format!(" [class {k}]")).unwrap_or_default();
        format!("{var} z^{} {} {}{class}", self.z_exp, self.basis, self.value)
    }
}

/// Writes `records` in the chosen format; JSON wraps them with `header`.
pub fn emit<R: Row, H: Serialize>(out: &mut dyn Write, format: Format, header: &H, records: &[R]) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a, H, R> {
                #[serde(flatten)]
                header: &'a H,
                records: &'a [R],
            }
            serde_json::to_writer_pretty(&mut *out, &Doc { header, records })?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in records {
                writeln!(out, "{}", r.text())?;
            }
        }
    }
    Ok(())
}

pub fn check_format(format: Format, allowed: &[Format]) -> anyhow::Result<()> {
    if !allowed.contains(&format) {
        bail!("format {format:?} not supported here");
    }
    Ok(())
}
