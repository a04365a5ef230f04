//! Bit-exact serialization of series windows.
//!
//! Two formats:
//! - CSV with header `exponent,coefficient`, one row per stored coefficient
//!   (zeros included, so the window round-trips);
//! - a JSON envelope `{modulus, offset, length, coeffs: [...]}`.

use super::{QSeries, SeriesError};
use serde::{Deserialize, Serialize};

/// JSON envelope mirroring the full stored state of a [`QSeries`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub modulus: u32,
    pub offset: i64,
    pub length: usize,
    pub coeffs: Vec<u32>,
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        SeriesJson {
            modulus: s.modulus(),
            offset: s.offset(),
            length: s.len(),
            coeffs: (0..s.len()).map(|i| s.get_rel(i)).collect(),
        }
    }
}

impl SeriesJson {
    pub fn into_series(self) -> Result<QSeries, SeriesError> {
        if self.coeffs.len() != self.length {
            return Err(SeriesError::Format(format!(
                "length field {} does not match {} coefficients",
                self.length,
                self.coeffs.len()
            )));
        }
        QSeries::from_coeffs(self.modulus, self.offset, &self.coeffs)
    }
}

impl QSeries {
    /// Full-window CSV, header `exponent,coefficient`, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for i in 0..self.len() {
            out.push_str(&format!("{},{}\n", self.offset() + i as i64, self.get_rel(i)));
        }
        out
    }

    /// Parses `to_csv` output back into a series. Exponents must be
    /// contiguous and ascending; the modulus is not part of the CSV and is
    /// supplied by the caller.
    pub fn from_csv(text: &str, modulus: u32) -> Result<QSeries, SeriesError> {
        let mut lines = text.lines();
        match lines.next() {
            Some("exponent,coefficient") => {}
            other => {
                return Err(SeriesError::Format(format!(
                    "expected header 'exponent,coefficient', got {other:?}"
                )))
            }
        }
        let mut offset: Option<i64> = None;
        let mut coeffs: Vec<u32> = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let (e, c) = line
                .split_once(',')
                .ok_or_else(|| SeriesError::Format(format!("line {}: missing comma", lineno + 2)))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| SeriesError::Format(format!("line {}: bad exponent", lineno + 2)))?;
            let c: u32 = c
                .trim()
                .parse()
                .map_err(|_| SeriesError::Format(format!("line {}: bad coefficient", lineno + 2)))?;
            match offset {
                None => offset = Some(e),
                Some(v) => {
                    if e != v + coeffs.len() as i64 {
                        return Err(SeriesError::Format(format!(
                            "line {}: exponent {} breaks contiguity",
                            lineno + 2,
                            e
                        )));
                    }
                }
            }
            coeffs.push(c);
        }
        QSeries::from_coeffs(modulus, offset.unwrap_or(0), &coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<QSeries, SeriesError> {
        let env: SeriesJson =
            serde_json::from_str(text).map_err(|e| SeriesError::Format(e.to_string()))?;
        env.into_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_is_bit_exact() {
        let s = QSeries::from_coeffs(5, -2, &[3, 0, 0, 1, 4, 0]).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("exponent,coefficient\n-2,3\n-1,0\n"));
        assert!(csv.ends_with("3,0\n"));
        assert_eq!(QSeries::from_csv(&csv, 5).unwrap(), s);
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        for l in [2u32, 7] {
            let s = QSeries::from_coeffs(l, 3, &[1, 0, 1, 1 % l, 0]).unwrap();
            assert_eq!(QSeries::from_json(&s.to_json()).unwrap(), s, "l = {l}");
        }
    }

    #[test]
    fn csv_rejects_gaps() {
        let text = "exponent,coefficient\n0,1\n2,1\n";
        assert!(matches!(
            QSeries::from_csv(text, 3),
            Err(SeriesError::Format(_))
        ));
    }
}
