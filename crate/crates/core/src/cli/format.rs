//! Number formatting shared by every report.

/// Fixed-point rendering with `digits` decimals.
///
/// The value is first reduced to 15 significant digits, which absorbs the
/// last-bit noise of the summation, and the resulting decimal string is then
/// rounded half away from zero. Exact ties do occur in the convergence
/// tables: `0.6640625` must print as `0.664063`, and `s^1(4)` at `q = 0.1`
/// is `0.9090725` up to round-off and prints as `0.909073`.
pub fn fixed(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string().to_lowercase();
    }
    // d.dddddddddddddde<exp>
    let sci = format!("{:.14e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i64 = exp.parse().expect("exponent");
    let sig: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();

    // decimal digits of |x| at positions 10^(exp) .. 10^(exp-14); lay them
    // out as an integer part and `digits + 1` fractional digits
    let int_len = (exp + 1).max(1) as usize;
    let total = int_len + digits + 1;
    let mut buf = vec![0u8; total];
    for (i, d) in sig.iter().enumerate() {
        // power of ten of this digit
        let power = exp - i as i64;
        let pos = int_len as i64 - 1 - power;
        if pos >= 0 && (pos as usize) < total {
            buf[pos as usize] = *d;
        }
    }
    let round_up = buf.pop().expect("guard digit") >= 5;
    if round_up {
        let mut i = buf.len();
        loop {
            if i == 0 {
                buf.insert(0, 1);
                break;
            }
            i -= 1;
            if buf[i] == 9 {
                buf[i] = 0;
            } else {
                buf[i] += 1;
                break;
            }
        }
    }
    let split = buf.len() - digits;
    let mut body: String = buf[..split].iter().map(|d| (b'0' + d) as char).collect();
    if digits > 0 {
        body.push('.');
        body.extend(buf[split..].iter().map(|d| (b'0' + d) as char));
    }
    let is_zero = buf.iter().all(|&d| d == 0);
    if x.is_sign_negative() && !is_zero {
        format!("-{body}")
    } else {
        body
    }
}

/// Scientific rendering with `digits` significant digits; zero prints as `0`.
pub fn scientific(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string().to_lowercase();
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Right-aligns whitespace-free columns for the `table` output format.
pub fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; ncols];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
