//! File formats, bound reports, the high-multiplicity inequality check and
//! the lemma campaigns used by the command-line tool.

pub mod campaign;
pub mod io;
pub mod kollar;
pub mod report;

pub use campaign::{verify_lemma_campaign, CampaignParams, CampaignReport, Lemma, TrialRow};
pub use kollar::{check_kollar, KollarCheck};
pub use report::{fmt_g12, loglog_slope, run_bound_report, BoundReport, CSV_HEADER};
