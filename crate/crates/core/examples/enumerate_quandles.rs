//! Isomorph-free enumeration of racks and quandles.
//!
//! Usage: `cargo run --release --example enumerate_quandles [MAX_ORDER]`

use rackring::enumerate::{count, EnumerationFilter};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    println!("order  racks  quandles  connected");
    for n in 1..=max {
        let racks = if n <= 5 {
            count(EnumerationFilter::racks(n)).unwrap().to_string()
        } else {
            "-".into()
        };
        let quandles = if n <= 6 {
            count(EnumerationFilter::quandles(n)).unwrap().to_string()
        } else {
            "-".into()
        };
        let connected = count(EnumerationFilter::connected_quandles(n)).unwrap();
        println!("{n:>5}  {racks:>5}  {quandles:>8}  {connected:>9}");
    }
    match count(EnumerationFilter::racks(7)) {
        Ok(n) => println!("racks of order 7: {n}"),
        Err(e) => println!("racks of order 7: {e}"),
    }
}
