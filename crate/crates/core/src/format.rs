//! Deterministic text output: `%.12g` numbers and write-then-rename files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub const SIGNIFICANT_DIGITS: usize = 12;

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// C `printf("%.12g")`.
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

/// One CSV line of `%.12g` fields, newline-terminated.
pub fn csv_row(fields: &[f64]) -> String {
    let mut line = fields.iter().map(|v| format_g(*v)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
/// On error no file appears at `path`.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.5, "0.5"),
            (2.5, "2.5"),
            (1.0, "1"),
            (-0.545420844055256, "-0.545420844055"),
            (0.1030776406404415, "0.10307764064"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-4, "0.0001"),
            (1.5e-5, "1.5e-05"),
            (2.4e-16, "2.4e-16"),
            (1e100, "1e+100"),
            (0.225, "0.225"),
            (9.9999999999995, "10"),
            (-0.0, "-0"),
            (f64::NAN, "nan"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x), s, "{x:?}");
        }
    }

    #[test]
    fn rows_and_atomic_write() {
        assert_eq!(csv_row(&[1.0, 0.25, 3e-9]), "1,0.25,3e-09\n");
        let dir = std::env::temp_dir().join(format!("rabi-format-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_atomic(&path, "a,b\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        assert!(write_atomic(&dir.join("missing").join("x.csv"), "a").is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
