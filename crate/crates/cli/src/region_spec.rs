//! Region arguments: inline JSON, a JSON file, or the product shorthand
//! `i[1,2] * [0,0.1] u 3.5`: places separated by `*`, pieces of a place
//! joined by `u`; `i[a,b]` is an imaginary interval, `[a,b]` a real one and
//! a bare number an isolated real point.

use std::path::Path;

use kuznetsov_core::measures::{Parity, PlaceSet, ProductRegion};
use kuznetsov_core::regions::Region;
use kuznetsov_core::{Error, Result};

use crate::config::parse_parities;

pub fn parse_region(spec: &str, parity: Option<&str>) -> Result<Region> {
    let s = spec.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad region JSON: {e}")));
    }
    if s.ends_with(".json") || Path::new(s).is_file() {
        let text = std::fs::read_to_string(s).map_err(|e| Error::InvalidInput(format!("cannot read region file `{s}`: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("bad region JSON in `{s}`: {e}")));
    }
    let places = s.split('*').map(parse_place).collect::<Result<Vec<_>>>()?;
    let parity: Vec<Parity> = parse_parities(parity.unwrap_or("0"), places.len())?;
    Ok(Region::Product(ProductRegion::new(parity, places)?))
}

fn parse_interval(body: &str, whole: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidInput(format!("bad interval `{whole}`"));
    let inner = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_place(s: &str) -> Result<PlaceSet> {
    let (mut imag, mut real, mut points) = (vec![], vec![], vec![]);
    for piece in s.split('u').map(str::trim) {
        if piece.is_empty() {
            return Err(Error::InvalidInput(format!("empty piece in place `{}`", s.trim())));
        }
        if let Some(body) = piece.strip_prefix('i') {
            imag.push(parse_interval(body.trim(), piece)?);
        } else if piece.starts_with('[') {
            real.push(parse_interval(piece, piece)?);
        } else {
            points.push(piece.parse().map_err(|_| Error::InvalidInput(format!("bad point `{piece}`")))?);
        }
    }
    PlaceSet::new(imag, real, points)
}
