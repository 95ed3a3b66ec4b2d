//! Scans scenario epochs and Walker phasing factors for the bundled case
//! study, looking for configurations with continuous 4x4 Earth-station
//! coverage and a full-day trunk (constellation-Gateway) window.
//!
//!     cargo run --release -p cislunar-cli --example epoch_scan [coarse|fine JD...]

use cislunar_cli::scenario::Scenario;
use cislunar_cli::study::run_access_study;

fn evaluate(epoch_jd: f64, phasing: u32, step_s: f64) -> (f64, f64, f64, f64, usize) {
    let mut scenario = Scenario::load(cislunar_cli::PAPER_CASE_STUDY_TOML).unwrap();
    scenario.epoch = cislunar_core::Epoch::from_julian_date(epoch_jd).unwrap();
    scenario.walker.phasing = phasing;
    scenario.step_s = step_s;
    let study = run_access_study(&scenario, &[(1, 1), (4, 4)]).unwrap();
    let one = &study.sizes[0];
    let four = &study.sizes[1];
    (
        four.e2l.stats.sum_s,
        one.e2l.stats.sum_s,
        one.l2g.stats.sum_s,
        one.g2m.stats.sum_s,
        one.e2l.stats.count,
    )
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let fine = args.first().map(|s| s == "fine").unwrap_or(false);

    if fine {
        for jd in args[1..].iter().map(|s| s.parse::<f64>().unwrap()) {
            for phasing in 0..4 {
                let (e2l4, e2l1, l2g, g2m, count1) = evaluate(jd, phasing, 10.0);
                println!(
                    "JD {jd:.3} F={phasing}: e2l4={e2l4:9.3} e2l1={e2l1:8.3} ({:4.1}%, {count1:2} windows) l2g={l2g:9.3} g2m={g2m:9.3}",
                    100.0 * e2l1 / 86_400.0,
                );
            }
        }
        return;
    }

    // coarse pass: quarter-day epochs over half a lunar month, F in 0..4
    println!("epoch_jd  F  e2l_4x4     e2l_1x1   pct  l2g_1x1    g2m");
    for quarter in 0..56 {
        let jd = 2_451_545.0 + quarter as f64 * 0.25;
        for phasing in 0..4 {
            let (e2l4, e2l1, l2g, g2m, _) = evaluate(jd, phasing, 30.0);
            let full = if e2l4 >= 86_399.0 { "FULL" } else { "    " };
            let trunk = if l2g >= 86_399.0 { "TRUNK" } else { "     " };
            println!(
                "{jd:.2}  {phasing}  {e2l4:9.1} {full}  {e2l1:8.1}  {:4.1}%  {l2g:9.1} {trunk}  {g2m:9.1}",
                100.0 * e2l1 / 86_400.0,
            );
        }
    }
}
