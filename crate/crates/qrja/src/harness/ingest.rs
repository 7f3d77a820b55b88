//! Contest CSV ingestion: header `contest,contestant,score`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{Contest, ContestSeries, HarnessError};

/// Parses and validates a contest series. Rows may arrive in any order;
/// contests are grouped by key and sorted chronologically (numeric order
/// when every key is numeric), entries keep file order within a contest.
/// Duplicate (contest, contestant) rows are an error naming both rows.
pub fn read_contest_csv<R: Read>(reader: R) -> Result<ContestSeries, HarnessError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut order: Vec<String> = Vec::new();
    let mut grouped: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
    let mut first_rows: BTreeMap<(String, String), usize> = BTreeMap::new();

    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2; // header is row 1
        let record = record?;
        if record.len() != 3 {
            return Err(HarnessError::Malformed {
                row,
                msg: format!("expected 3 fields contest,contestant,score, got {}", record.len()),
            });
        }
        let contest = record[0].trim().to_string();
        let contestant = record[1].trim().to_string();
        if contest.is_empty() || contestant.is_empty() {
            return Err(HarnessError::Malformed { row, msg: "empty contest or contestant".into() });
        }
        let score: f64 = record[2].trim().parse().map_err(|e| HarnessError::Malformed {
            row,
            msg: format!("bad score {:?}: {e}", &record[2]),
        })?;
        if !score.is_finite() {
            return Err(HarnessError::Malformed { row, msg: format!("non-finite score {score}") });
        }
        if let Some(&first) = first_rows.get(&(contest.clone(), contestant.clone())) {
            return Err(HarnessError::DuplicateEntry {
                contest,
                contestant,
                first_row: first,
                second_row: row,
            });
        }
        first_rows.insert((contest.clone(), contestant.clone()), row);
        if !grouped.contains_key(&contest) {
            order.push(contest.clone());
        }
        grouped.entry(contest).or_default().push((contestant, score));
    }

    let contests = order
        .into_iter()
        .map(|id| {
            let entries = grouped.remove(&id).expect("grouped by construction");
            Contest { id, entries }
        })
        .collect();
    ContestSeries::new(contests)
}

pub fn read_contest_csv_path<P: AsRef<Path>>(path: P) -> Result<ContestSeries, HarnessError> {
    read_contest_csv(File::open(path)?)
}

pub fn write_contest_csv<W: Write>(series: &ContestSeries, writer: W) -> Result<(), HarnessError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["contest", "contestant", "score"])?;
    for contest in series.contests() {
        for (name, score) in &contest.entries {
            wtr.write_record([contest.id.as_str(), name.as_str(), &score.to_string()])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_contest_csv_path<P: AsRef<Path>>(series: &ContestSeries, path: P) -> Result<(), HarnessError> {
    write_contest_csv(series, File::create(path)?)
}
