//! Plain-text and CSV tables.

/// ANSI foreground colours used for cell highlighting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colour {
    Red,
    Green,
    Yellow,
    Magenta,
    Cyan,
}

impl Colour {
    fn code(self) -> u8 {
        match self {
            Colour::Red => 31,
            Colour::Green => 32,
            Colour::Yellow => 33,
            Colour::Magenta => 35,
            Colour::Cyan => 36,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub text: String,
    pub colour: Option<Colour>,
}

impl Cell {
    pub fn coloured(text: impl Into<String>, colour: Colour) -> Self {
        Cell {
            text: text.into(),
            colour: Some(colour),
        }
    }
}

impl<T: Into<String>> From<T> for Cell {
    fn from(text: T) -> Self {
        Cell {
            text: text.into(),
            colour: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    /// Columns padded to their widest cell and separated by two spaces.
    /// Colour codes wrap the cell text and do not count towards widths.
    pub fn to_text(&self, colour: bool) -> String {
        let cols = self.headers.len().max(self.rows.iter().map(Vec::len).max().unwrap_or(0));
        let mut widths = vec![0; cols];
        for (i, h) in self.headers.iter().enumerate() {
            widths[i] = h.chars().count();
        }
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                widths[i] = widths[i].max(c.text.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: Vec<(&str, Option<Colour>)>| {
            let mut l = String::new();
            let last = cells.len().saturating_sub(1);
            for (i, (text, col)) in cells.into_iter().enumerate() {
                if i > 0 {
                    l.push_str("  ");
                }
                match col.filter(|_| colour) {
                    Some(c) => l.push_str(&format!("\x1b[{}m{text}\x1b[0m", c.code())),
                    None => l.push_str(text),
                }
                if i < last {
                    l.push_str(&" ".repeat(widths[i] - text.chars().count()));
                }
            }
            out.push_str(l.trim_end_matches(' '));
            out.push('\n');
        };
        line(self.headers.iter().map(|h| (h.as_str(), None)).collect());
        for row in &self.rows {
            line(row.iter().map(|c| (c.text.as_str(), c.colour)).collect());
        }
        out
    }

    /// RFC 4180 CSV with a header row and CRLF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .flexible(true)
            .from_writer(Vec::new());
        // Writing into a Vec cannot fail.
        let _ = w.write_record(&self.headers);
        for row in &self.rows {
            let _ = w.write_record(row.iter().map(|c| c.text.as_str()));
        }
        let bytes = w.into_inner().unwrap_or_default();
        String::from_utf8(bytes).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(["name", "class"]);
        t.push(vec!["tennis ball".into(), Cell::coloured("Large", Colour::Yellow)]);
        t.push(vec!["pen, \"blue\"".into(), "Small".into()]);
        t
    }

    #[test]
    fn aligned_text() {
        assert_eq!(
            table().to_text(false),
            "name         class\ntennis ball  Large\npen, \"blue\"  Small\n"
        );
    }

    #[test]
    fn colour_does_not_shift_columns() {
        let text = table().to_text(true);
        assert!(text.contains("tennis ball  \x1b[33mLarge\x1b[0m\n"));
    }

    #[test]
    fn csv_quotes_fields() {
        assert_eq!(
            table().to_csv(),
            "name,class\r\ntennis ball,Large\r\n\"pen, \"\"blue\"\"\",Small\r\n"
        );
    }

    #[test]
    fn header_only() {
        let t = Table::new(["a", "bb"]);
        assert_eq!(t.to_text(false), "a  bb\n");
        assert_eq!(t.to_csv(), "a,bb\r\n");
    }
}
