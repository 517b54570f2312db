use crate::rdf::Term;

/// Query solutions: column names without `?`, one row per solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

/// Cell text: IRIs and literals as their bare value, blanks as `_:label`.
pub fn cell(term: Option<&Term>) -> String {
    match term {
        None => String::new(),
        Some(Term::Blank(b)) => format!("_:{b}"),
        Some(t) => t.value_str().to_string(),
    }
}

impl ResultTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, name: &str) -> Option<&Term> {
        self.rows.get(row)?.get(self.column(name)?)?.as_ref()
    }

    /// Rows rendered as strings, in order.
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|t| cell(t.as_ref())).collect())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in self.string_rows() {
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// Column-aligned text table.
    pub fn to_table(&self) -> String {
        let rows = self.string_rows();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count() + 1).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: Vec<String>| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let mut out = line(self.columns.iter().map(|c| format!("?{c}")).collect());
        out.push('\n');
        out.push_str(
            &widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("-+-"),
        );
        out.push('\n');
        for r in rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out.push_str(&format!(
            "({} row{})\n",
            self.rows.len(),
            if self.rows.len() == 1 { "" } else { "s" }
        ));
        out
    }
}
