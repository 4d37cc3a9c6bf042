// A small seeded verification campaign.

use tagclique::reduction::{run_campaign, CampaignConfig};

pub fn run_example() {
    let config = CampaignConfig::new(7, 6..=7, 1, 4);
    let summary = run_campaign(&config).unwrap();
    assert_eq!(summary.disagreements(), 0);
    assert_eq!(summary.report(), run_campaign(&config).unwrap().report());
    print!("{}", summary.report());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
