// Per-section wall-clock of the full-profile suite.
use lattice_disperse::report::RunConfig;
use lattice_disperse::suites;
use std::time::Instant;

fn main() {
    let cfg = RunConfig::default();
    let mut total = 0.0;
    let sections: Vec<(&str, Box<dyn Fn(&RunConfig) -> lattice_disperse::Result<Vec<lattice_disperse::VerdictRecord>>>)> = vec![
        ("core", Box::new(suites::core_suite)),
        ("bessel", Box::new(suites::bessel_suite)),
        ("dispersive", Box::new(suites::dispersive_suite)),
        ("resolvent", Box::new(suites::resolvent_suite)),
        ("schrodinger", Box::new(suites::schrodinger_suite)),
    ];
    for (name, f) in sections {
        let start = Instant::now();
        let records = f(&cfg).expect(name);
        let dt = start.elapsed().as_secs_f64();
        total += dt;
        let fails = records.iter().filter(|r| r.is_fail()).count();
        println!("{name:12} {dt:8.1}s  {} records, {} fails", records.len(), fails);
        for r in records.iter().filter(|r| r.is_fail()).take(5) {
            println!("    FAIL {} lhs={} rhs={} {:?}", r.check_id, r.lhs, r.rhs, r.parameters);
        }
    }
    println!("TOTAL {total:.1}s");
}
