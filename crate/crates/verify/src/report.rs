//! Versioned JSON reports and their atomic write.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use yqn_core::check::{CheckOutcome, Status};

pub const SCHEMA: &str = "yqn-verify-report/1";

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Record {
    pub suite: String,
    pub group: String,
    pub name: String,
    pub anchor: String,
    pub status: String,
    /// The status is what the check is meant to produce (pass, or fail for
    /// controls and recorded discrepancies).
    pub expected: bool,
    pub control: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_wall_ms: Option<u64>,
}

impl Record {
    pub fn new(suite: &str, group: &str, c: &CheckOutcome, wall_ms: Option<u64>) -> Self {
        Record {
            suite: suite.into(),
            group: group.into(),
            name: c.name.clone(),
            anchor: c.anchor.into(),
            status: c.status.as_str().into(),
            expected: c.as_expected(),
            control: c.control,
            discrepancy: c.discrepancy.map(Into::into),
            witness: c.witness.clone(),
            detail: c.detail.clone(),
            group_wall_ms: wall_ms,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive.as_str()
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub unexpected: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: BTreeMap<&'static str, String>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, config: BTreeMap<&'static str, String>, records: Vec<Record>) -> Self {
        let mut s = Summary { total: records.len(), ..Summary::default() };
        for r in &records {
            match r.status.as_str() {
                "pass" => s.pass += 1,
                "fail" => s.fail += 1,
                _ => s.inconclusive += 1,
            }
            s.unexpected += !r.expected as usize;
        }
        Report { schema: SCHEMA, version: env!("CARGO_PKG_VERSION"), command: command.into(), config, records, summary: s }
    }

    pub fn all_expected(&self) -> bool {
        self.summary.unexpected == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "report path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<CheckOutcome> {
        vec![
            CheckOutcome::pass("a", "quantum Yang-Baxter equation", "ok"),
            CheckOutcome::fail("b", "quantum Yang-Baxter equation", "entry (0, 1)").as_control(),
            CheckOutcome::fail("c", "RTT relation", "u = 3"),
        ]
    }

    #[test]
    fn summary_counts_unexpected() {
        let recs: Vec<Record> = sample().iter().map(|c| Record::new("rmatrix", "qybe", c, None)).collect();
        let r = Report::new("rmatrix", BTreeMap::new(), recs);
        assert_eq!((r.summary.pass, r.summary.fail, r.summary.unexpected), (1, 2, 1));
        assert!(!r.all_expected());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["records"][2]["witness"], "u = 3");
        assert!(v["records"][0].get("group_wall_ms").is_none());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = std::env::temp_dir().join(format!("yqn-report-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("r.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
