//! Normalized decoding radius against rate for `n = 100`.

use rankmetric::cli::{cmd_radius_table, radius_csv};

fn main() {
    let rows = cmd_radius_table(100);
    for r in rows.iter().step_by(10) {
        println!("R = {:.2}: half-distance {:.3}, symmetric {:.3}", r.rate, r.dashed, r.thick);
    }
    let csv = radius_csv(&rows, 100, 2);
    println!("{} CSV lines", csv.lines().count());
}
