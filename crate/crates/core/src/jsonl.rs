//! Streaming JSON Lines I/O.
//!
//! One record per line, UTF-8, no wrapping array. Writers always emit
//! canonical form (declaration-order keys, shortest float representation),
//! so rewriting parsed records reproduces the input bytes.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CoreError;

/// Streams `(line_number, parse_result)` for every nonempty line to the
/// callback. Returns the number of nonempty lines. Blank lines are skipped;
/// parse failures are handed to the callback, which decides whether to
/// abort (by returning an error) or count and continue.
pub fn scan_jsonl<T, F>(path: &Path, mut on_record: F) -> Result<u64, CoreError>
where
    T: DeserializeOwned,
    F: FnMut(u64, Result<T, serde_json::Error>) -> Result<(), CoreError>,
{
    let file = File::open(path).map_err(|e| CoreError::io(path, e))?;
    scan_jsonl_reader(file, path, &mut on_record)
}

fn scan_jsonl_reader<R, T, F>(reader: R, path: &Path, on_record: &mut F) -> Result<u64, CoreError>
where
    R: Read,
    T: DeserializeOwned,
    F: FnMut(u64, Result<T, serde_json::Error>) -> Result<(), CoreError>,
{
    let mut reader = BufReader::with_capacity(1 << 16, reader);
    let mut buf = String::new();
    let mut line_no = 0u64;
    let mut nonempty = 0u64;
    loop {
        buf.clear();
        let read = reader
            .read_line(&mut buf)
            .map_err(|e| CoreError::io(path, e))?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let trimmed = buf.trim();
        if trimmed.is_empty() {
            continue;
        }
        nonempty += 1;
        on_record(line_no, serde_json::from_str::<T>(trimmed))?;
    }
    Ok(nonempty)
}

/// Reads a whole file of records, failing on the first malformed line.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, CoreError> {
    let mut out = Vec::new();
    scan_jsonl(path, |line, parsed| {
        let record = parsed.map_err(|source| CoreError::MalformedLine {
            path: path.to_path_buf(),
            line,
            source,
        })?;
        out.push(record);
        Ok(())
    })?;
    Ok(out)
}

/// Writes records one per line in canonical form. Returns the line count.
pub fn write_jsonl<'a, T, I>(path: &Path, records: I) -> Result<u64, CoreError>
where
    T: Serialize + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let file = File::create(path).map_err(|e| CoreError::io(path, e))?;
    let mut writer = BufWriter::with_capacity(1 << 16, file);
    let mut count = 0u64;
    for record in records {
        let line = serde_json::to_string(record)?;
        writer
            .write_all(line.as_bytes())
            .and_then(|()| writer.write_all(b"\n"))
            .map_err(|e| CoreError::io(path, e))?;
        count += 1;
    }
    writer.flush().map_err(|e| CoreError::io(path, e))?;
    Ok(count)
}

/// Writes a single pretty-printed JSON document with a trailing newline.
/// Used for metadata headers, which stay human-diffable.
pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<(), CoreError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CoreError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CoreError> {
    let file = File::open(path).map_err(|e| CoreError::io(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(CoreError::from)
}

#[cfg(test)]
mod tests {
    use serde::Deserialize;

    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Row {
        id: u32,
        score: f64,
    }

    #[test]
    fn blank_lines_skipped_and_order_kept() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.jsonl");
        std::fs::write(&path, "{\"id\":1,\"score\":0.5}\n\n{\"id\":2,\"score\":1.0}\n").unwrap();
        let rows: Vec<Row> = read_jsonl(&path).unwrap();
        assert_eq!(rows, vec![Row { id: 1, score: 0.5 }, Row { id: 2, score: 1.0 }]);
    }

    #[test]
    fn write_then_read_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.jsonl");
        let rows = vec![Row { id: 1, score: 0.625 }, Row { id: 2, score: 3.45 }];
        write_jsonl(&path, &rows).unwrap();
        let bytes_a = std::fs::read(&path).unwrap();
        let parsed: Vec<Row> = read_jsonl(&path).unwrap();
        write_jsonl(&path, &parsed).unwrap();
        let bytes_b = std::fs::read(&path).unwrap();
        assert_eq!(bytes_a, bytes_b);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.jsonl");
        std::fs::write(&path, "{\"id\":1,\"score\":0.5}\nnot json\n").unwrap();
        let err = read_jsonl::<Row>(&path).unwrap_err();
        match err {
            CoreError::MalformedLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other:?}"),
        }
    }
}
