use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// 12 significant digits; scientific notation outside [1e-4, 1e12).
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let mag = x.abs();
    if !(1e-4..1e12).contains(&mag) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - mag.log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn opt12(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

pub fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout())),
    })
}

pub fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}
