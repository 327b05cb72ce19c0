//! Comma-separated list flags such as `--spacings 40,60.5` and `--n-values 0,1,2`.

use std::str::FromStr;

/// Parsed `--spacings` value.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

/// Parsed `--n-values` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountList(pub Vec<usize>);

fn split_items(s: &str) -> Result<Vec<&str>, String> {
    if s.trim().is_empty() {
        return Err("list is empty".into());
    }
    s.split(',')
        .enumerate()
        .map(|(i, item)| {
            let item = item.trim();
            if item.is_empty() {
                Err(format!("item {} of the list is empty", i + 1))
            } else {
                Ok(item)
            }
        })
        .collect()
}

/// Finite reals separated by commas; surrounding whitespace is ignored.
pub fn parse_float_list(s: &str) -> Result<FloatList, String> {
    split_items(s)?
        .into_iter()
        .map(|item| match f64::from_str(item) {
            Ok(x) if x.is_finite() => Ok(x),
            Ok(x) => Err(format!("{x} is not a finite number")),
            Err(_) => Err(format!("{item:?} is not a number")),
        })
        .collect::<Result<_, _>>()
        .map(FloatList)
}

/// Nonnegative integers separated by commas.
pub fn parse_count_list(s: &str) -> Result<CountList, String> {
    split_items(s)?
        .into_iter()
        .map(|item| {
            usize::from_str(item).map_err(|_| format!("{item:?} is not a nonnegative integer"))
        })
        .collect::<Result<_, _>>()
        .map(CountList)
}
