#![no_main]

use greenpot::cli::{Command, RunConfig};
use greenpot::geometry::ComplexPoint;
use libfuzzer_sys::fuzz_target;

const COMMANDS: [Command; 6] = [
    Command::Sigma,
    Command::Fekete,
    Command::Constants,
    Command::VerifyInequality,
    Command::VerifyBlaschke,
    Command::ExtremalSweep,
];

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for command in COMMANDS {
        match RunConfig::from_toml_str(command, text) {
            Ok(cfg) => {
                let p = cfg.set.project(ComplexPoint::new(0.0, 0.0));
                assert!(cfg.set.contains(p));
                assert!(cfg.numeric.grid_h > 0.0);
            }
            Err(greenpot::Error::Config { line, .. }) => {
                assert!(line >= 1 && line <= text.lines().count().max(1) + 1);
            }
            Err(e) => panic!("parser returned a non-config error: {e}"),
        }
    }
});
