use std::fmt;

use serde::{Serialize, Serializer};

use crate::format::{fmt_g, round_g};
use crate::SchemeName;

pub const CSV_HEADER: &str = "scheme,gamma_m_db,gamma_w_db,epsilon,qt,qr,rate_bits,status,method";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Infeasible,
    /// Normalized rate whose reference capacity is zero.
    Undefined,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::Undefined => "undefined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Mc,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Mc => "mc",
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub scheme: SchemeName,
    #[serde(serialize_with = "rounded")]
    pub gamma_m_db: f64,
    #[serde(serialize_with = "rounded")]
    pub gamma_w_db: f64,
    #[serde(serialize_with = "rounded_opt")]
    pub epsilon: Option<f64>,
    pub qt: usize,
    pub qr: usize,
    #[serde(serialize_with = "rounded_opt")]
    pub rate_bits: Option<f64>,
    pub status: Status,
    pub method: Method,
    /// 95% band of a Monte Carlo rate; not part of the printed record.
    #[serde(skip)]
    pub interval: Option<(f64, f64)>,
}

impl Record {
    pub fn csv_row(&self) -> String {
        self.to_string()
    }

    pub fn json_line(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<f64>| v.map(fmt_g).unwrap_or_default();
        write!(
            f,
            "{},{},{},{},{},{},{},{},{}",
            self.scheme,
            fmt_g(self.gamma_m_db),
            fmt_g(self.gamma_w_db),
            opt(self.epsilon),
            self.qt,
            self.qr,
            opt(self.rate_bits),
            self.status.as_str(),
            self.method.as_str()
        )
    }
}

fn rounded<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_g(*x))
}

fn rounded_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_g(*v)),
        None => s.serialize_none(),
    }
}
