//! Multi-run orchestration: scaling scans over `n`, deletion profiles and
//! cycle audits.

mod audit;
mod profile;
mod scan;

pub use audit::{cycle_audit, CycleAudit};
pub use profile::{deletion_profile, DeletionProfile, ProfileBin};
pub use scan::{derive_seed, scan, scan_csv, HorizonPolicy, PerN, RunOutcome, ScanConfig, ScanResult};
