use std::collections::{BTreeMap, HashMap};

use crate::archive::CdxRecord;

/// Role of one capture within its URL group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// Earliest response carrying its digest; gets full content triples.
    Canonical,
    /// Later capture with a canonical's digest; index into the group.
    SameAs(usize),
    /// Neither: not a response and no earlier response with its digest.
    Skipped,
}

/// Partitions captures by SURT key; each group is sorted by timestamp and
/// holds one capture per timestamp (first occurrence kept).
pub fn group_versions<'a, I>(records: I) -> BTreeMap<String, Vec<CdxRecord>>
where
    I: IntoIterator<Item = &'a CdxRecord>,
{
    let mut groups: BTreeMap<String, Vec<CdxRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry(r.surt_url.clone())
            .or_default()
            .push(r.clone());
    }
    for group in groups.values_mut() {
        // stable: equal timestamps keep input order
        group.sort_by_key(|r| r.timestamp);
        group.dedup_by(|b, a| a.timestamp == b.timestamp);
    }
    groups
}

/// The capture kinds that carry content: HTTP 200 HTML responses.
pub fn is_html_response(r: &CdxRecord) -> bool {
    r.status == Some(200) && r.mime == "text/html"
}

/// For each digest, the earliest response in `group` is canonical and every
/// strictly later capture with that digest (responses and revisits alike)
/// is same-as that canonical. `group` must be time-ordered.
pub fn detect_duplicates<F>(group: &[CdxRecord], is_response: F) -> Vec<Assignment>
where
    F: Fn(&CdxRecord) -> bool,
{
    let mut earliest: HashMap<&str, usize> = HashMap::new();
    for (i, r) in group.iter().enumerate() {
        if is_response(r) {
            earliest.entry(r.digest.as_str()).or_insert(i);
        }
    }
    group
        .iter()
        .enumerate()
        .map(|(i, r)| match earliest.get(r.digest.as_str()) {
            Some(&c) if c == i => Assignment::Canonical,
            Some(&c) if group[c].timestamp < r.timestamp => Assignment::SameAs(c),
            _ => Assignment::Skipped,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::CaptureTime;

    fn rec(surt: &str, ts: &str, digest: &str) -> CdxRecord {
        CdxRecord {
            surt_url: surt.into(),
            timestamp: CaptureTime::parse(ts).unwrap(),
            original_url: format!("http://{surt}/"),
            mime: "text/html".into(),
            status: Some(200),
            digest: digest.into(),
            redirect: None,
            meta_flags: None,
            compressed_size: 100,
            offset: 0,
            filename: "a.warc.gz".into(),
        }
    }

    fn assign(records: &[CdxRecord]) -> Vec<Assignment> {
        detect_duplicates(records, is_html_response)
    }

    #[test]
    fn groups_by_url_in_time_order() {
        let records = [
            rec("u1", "2003", "A"),
            rec("u2", "2002", "B"),
            rec("u1", "2001", "C"),
            rec("u1", "2001", "D"),
        ];
        let groups = group_versions(&records);
        let u1: Vec<_> = groups["u1"].iter().map(|r| r.digest.as_str()).collect();
        assert_eq!(u1, ["C", "A"]);
        assert_eq!(groups["u2"].len(), 1);
    }

    #[test]
    fn earliest_digest_is_canonical() {
        use Assignment::*;
        let g = [
            rec("u", "2001", "A"),
            rec("u", "2002", "A"),
            rec("u", "2003", "B"),
        ];
        assert_eq!(assign(&g), [Canonical, SameAs(0), Canonical]);
        let g = [
            rec("u", "2001", "A"),
            rec("u", "2002", "B"),
            rec("u", "2003", "A"),
        ];
        assert_eq!(assign(&g), [Canonical, Canonical, SameAs(0)]);
        let g = [
            rec("u", "2001", "A"),
            rec("u", "2002", "A"),
            rec("u", "2003", "A"),
        ];
        assert_eq!(assign(&g), [Canonical, SameAs(0), SameAs(0)]);
    }

    #[test]
    fn revisits_join_by_digest() {
        use Assignment::*;
        let mut revisit = rec("u", "2002", "A");
        revisit.mime = "warc/revisit".into();
        revisit.status = None;
        let mut orphan = rec("u", "2000", "Z");
        orphan.status = Some(404);
        let g = [orphan, rec("u", "2001", "A"), revisit];
        assert_eq!(assign(&g), [Skipped, Canonical, SameAs(1)]);
    }
}
