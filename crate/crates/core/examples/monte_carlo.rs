//! A seeded simulation campaign, as run by `rankmetric simulate`.

use rankmetric::cli::{cmd_simulate, rows_to_csv, ExperimentConfig, Mode, OneOrMany};

fn main() {
    let cfg = ExperimentConfig {
        p: Some(2),
        n: Some(8),
        k: Some(OneOrMany::Many(vec![5, 6])),
        mode: Some(Mode::SymHigh),
        trials: Some(200),
        seed: Some(1),
        ..Default::default()
    };
    let sim = cmd_simulate(&cfg, false).expect("valid config");
    print!("{}", rows_to_csv(&sim.rows));
    let again = cmd_simulate(&cfg, false).expect("valid config");
    assert_eq!(sim.rows, again.rows);
}
