//! Runs every campaign at a reduced sample count and prints the summary lines.

use adqc_fidelity::verify::{run_campaign, Campaign, CampaignConfig};

fn main() -> adqc_fidelity::Result<()> {
    for campaign in Campaign::ALL {
        let mut config = CampaignConfig::for_campaign(campaign, 5);
        config.samples = config.samples.min(100);
        println!("{}", run_campaign(&config, campaign)?.summary_line());
    }
    Ok(())
}
