use std::fmt::Arguments;
use std::io::{self, Write};

use num_bigint::BigInt;
use serde::Serialize;

/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! outln {
    ($($arg:tt)*) => {
        $crate::output::write_line(format_args!($($arg)*))
    };
}
pub(crate) use outln;

pub fn write_line(args: Arguments<'_>) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout
        .write_fmt(args)
        .and_then(|()| stdout.write_all(b"\n"))
    {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

/// JSON array of bare integer literals; JSON numbers have no size limit.
pub fn json_int_array(values: &[BigInt]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let quoted: Vec<String> = fields.iter().map(|f| csv_field(f.as_ref())).collect();
    quoted.join(",")
}

fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn print_json<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("plain data always serializes")
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        assert_eq!(
            csv_line(&["1", "a,b", "say \"hi\""]),
            "1,\"a,b\",\"say \"\"hi\"\"\""
        );
    }

    #[test]
    fn int_array_is_bare() {
        let v: Vec<BigInt> = vec![1.into(), BigInt::from(10).pow(30)];
        assert_eq!(json_int_array(&v), "[1,1000000000000000000000000000000]");
    }
}
