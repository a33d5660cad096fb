//! Text and JSON encodings of rows.
//!
//! Text: one token per cell, space separated. `0`, `1`, `2` are fixed and
//! don't-care cells; group cells are a letter followed by the group id:
//! `n` (at least one 0), `N` (at least two 0's), `e` (at most one 1),
//! `E` (at most two 1's), `g` (exactly one 0), `a` (anchor) with body letters
//! `c`, `f`, `F`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AnchoredBody, CellKind, Group, GroupId, GroupKind, RowError, WildcardRow};

impl fmt::Display for WildcardRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, token) in self.tokens().iter().enumerate() {
            if p > 0 {
                f.write_str(" ")?;
            }
            f.write_str(token)?;
        }
        Ok(())
    }
}

fn kind_letter(kind: GroupKind, is_anchor: bool) -> char {
    match kind {
        GroupKind::AtLeastOneZero => 'n',
        GroupKind::AtLeastTwoZeros => 'N',
        GroupKind::AtMostOneOne => 'e',
        GroupKind::AtMostTwoOnes => 'E',
        GroupKind::ExactlyOneZero => 'g',
        GroupKind::Anchored { .. } if is_anchor => 'a',
        GroupKind::Anchored { body, .. } => match body {
            AnchoredBody::AllZero => 'c',
            AnchoredBody::AtMostOneOne => 'f',
            AnchoredBody::AtMostTwoOnes => 'F',
        },
    }
}

fn kind_name(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::AtLeastOneZero => "n",
        GroupKind::AtLeastTwoZeros => "n2",
        GroupKind::AtMostOneOne => "eps",
        GroupKind::AtMostTwoOnes => "eps2",
        GroupKind::ExactlyOneZero => "gamma",
        GroupKind::Anchored { body, .. } => match body {
            AnchoredBody::AllZero => "a-c",
            AnchoredBody::AtMostOneOne => "a-eps",
            AnchoredBody::AtMostTwoOnes => "a-eps2",
        },
    }
}

impl WildcardRow {
    /// One token per cell.
    pub fn tokens(&self) -> Vec<String> {
        self.cells
            .iter()
            .enumerate()
            .map(|(p, cell)| match *cell {
                CellKind::Zero => "0".to_string(),
                CellKind::One => "1".to_string(),
                CellKind::DontCare => "2".to_string(),
                CellKind::Member(id) => {
                    let kind = self.groups[&id].kind;
                    format!("{}{id}", kind_letter(kind, kind.anchor() == Some(p)))
                }
            })
            .collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<WildcardRow, RowError> {
        let mut cells = Vec::with_capacity(tokens.len());
        let mut letters: BTreeMap<GroupId, Vec<(char, usize)>> = BTreeMap::new();
        for (p, token) in tokens.iter().enumerate() {
            let token = token.as_ref();
            let cell = match token {
                "0" => CellKind::Zero,
                "1" => CellKind::One,
                "2" => CellKind::DontCare,
                _ => {
                    let mut chars = token.chars();
                    let letter = chars.next().unwrap_or(' ');
                    if !"nNeEgacfF".contains(letter) {
                        return Err(RowError::Malformed(format!("unknown cell token `{token}`")));
                    }
                    let id: GroupId = chars.as_str().parse().map_err(|_| {
                        RowError::Malformed(format!("cell token `{token}` lacks a numeric group id"))
                    })?;
                    letters.entry(id).or_default().push((letter, p));
                    CellKind::Member(id)
                }
            };
            cells.push(cell);
        }
        let mut groups = Vec::new();
        for (id, entries) in letters {
            let anchors: Vec<usize> = entries
                .iter()
                .filter(|(l, _)| *l == 'a')
                .map(|&(_, p)| p)
                .collect();
            let body: Vec<(char, usize)> =
                entries.iter().copied().filter(|(l, _)| *l != 'a').collect();
            let first = body.first().map(|&(l, _)| l).ok_or_else(|| {
                RowError::Malformed(format!("group {id} has an anchor but no body"))
            })?;
            if body.iter().any(|&(l, _)| l != first) {
                return Err(RowError::Malformed(format!("group {id} mixes cell letters")));
            }
            let kind = match (first, anchors.as_slice()) {
                ('n', []) => GroupKind::AtLeastOneZero,
                ('N', []) => GroupKind::AtLeastTwoZeros,
                ('e', []) => GroupKind::AtMostOneOne,
                ('E', []) => GroupKind::AtMostTwoOnes,
                ('g', []) => GroupKind::ExactlyOneZero,
                ('c' | 'f' | 'F', &[anchor]) => GroupKind::Anchored {
                    anchor,
                    body: match first {
                        'c' => AnchoredBody::AllZero,
                        'f' => AnchoredBody::AtMostOneOne,
                        _ => AnchoredBody::AtMostTwoOnes,
                    },
                },
                _ => {
                    return Err(RowError::Malformed(format!(
                        "group {id}: anchored bodies need exactly one anchor, other kinds none"
                    )))
                }
            };
            let members = body.iter().map(|&(_, p)| p).collect();
            groups.push((id, Group { kind, members }));
        }
        WildcardRow::new(cells, groups)
    }
}

impl FromStr for WildcardRow {
    type Err = RowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        WildcardRow::from_tokens(&tokens)
    }
}

/// Parses one row per line; blank lines and `#` comments are skipped.
pub fn parse_rows(text: &str) -> Result<Vec<WildcardRow>, RowError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line.parse().map_err(|e: RowError| RowError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGroup {
    pub id: GroupId,
    pub kind: String,
}

/// JSON form of a row: cell tokens plus the group table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub cells: Vec<String>,
    pub groups: Vec<JsonGroup>,
}

impl From<&WildcardRow> for JsonRow {
    fn from(row: &WildcardRow) -> Self {
        JsonRow {
            cells: row.tokens(),
            groups: row
                .groups
                .iter()
                .map(|(&id, g)| JsonGroup {
                    id,
                    kind: kind_name(g.kind).to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&JsonRow> for WildcardRow {
    type Error = RowError;

    fn try_from(json: &JsonRow) -> Result<Self, Self::Error> {
        let row = WildcardRow::from_tokens(&json.cells)?;
        let declared: BTreeMap<GroupId, &str> =
            json.groups.iter().map(|g| (g.id, g.kind.as_str())).collect();
        let actual: BTreeMap<GroupId, &str> =
            row.groups.iter().map(|(&id, g)| (id, kind_name(g.kind))).collect();
        if declared != actual {
            return Err(RowError::Malformed(
                "group table disagrees with the cell tokens".to_string(),
            ));
        }
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in [
            "n1 1 n3 n1 n2 n3 2 n2 1",
            "a1 F1 F1 0 N2 N2 N2",
            "g4 g4 e1 e1 c2 a2 f3 a3 f3",
        ] {
            let row: WildcardRow = s.parse().unwrap();
            assert_eq!(row.to_string(), s);
        }
    }

    #[test]
    fn json_round_trip_and_consistency() {
        let row: WildcardRow = "a1 c1 c1 n2 n2".parse().unwrap();
        let json = JsonRow::from(&row);
        assert_eq!(json.groups[0].kind, "a-c");
        let text = serde_json::to_string(&json).unwrap();
        let back: JsonRow = serde_json::from_str(&text).unwrap();
        assert_eq!(WildcardRow::try_from(&back).unwrap(), row);

        let mut lying = json.clone();
        lying.groups[1].kind = "eps".into();
        assert!(WildcardRow::try_from(&lying).is_err());
    }

    #[test]
    fn bad_tokens() {
        assert!("2 x1".parse::<WildcardRow>().is_err());
        assert!("n 2".parse::<WildcardRow>().is_err());
        assert!("a1 2".parse::<WildcardRow>().is_err());
        assert!("n1 e1".parse::<WildcardRow>().is_err());
        assert!("c1 c1".parse::<WildcardRow>().is_err());
        let err = parse_rows("2 2\n# comment\n2 q\n").unwrap_err();
        assert!(matches!(err, RowError::Parse { line: 3, .. }));
    }
}
