//! Entries of the four published convergence tables for r = -1, transcribed
//! as printed (six decimals, `-` where the table has no entry).

#![allow(dead_code)]

pub const TABLE2_Q: f64 = 0.1;
pub const TABLE2: &[&str] = &[
    "0 1.000000 - - - - - - - -",
    "1 0.900000 0.927500 - - - - - - -",
    "2 0.910000 0.907250 0.912819 - - - - - -",
    "3 0.909000 0.909275 0.908718 0.909846 - - - - -",
    "4 0.909100 0.909073 0.909128 0.909015 0.909244 - - - -",
    "5 0.909090 0.909093 0.909087 0.909098 0.909076 0.909122 - - -",
    "6 0.909091 0.909091 0.909091 0.909090 0.909092 0.909088 0.909097 - -",
    "7 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909092 -",
    "8 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091",
    "9 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091",
    "10 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091 0.909091",
];

pub const TABLE3_Q: f64 = 0.5;
pub const TABLE3: &[&str] = &[
    "0 1.000000 - - - - -",
    "1 0.500000 0.687500 - - - -",
    "2 0.750000 0.656250 0.667969 - - -",
    "3 0.625000 0.671875 0.666016 0.666748 - -",
    "4 0.687500 0.664063 0.666992 0.666626 0.666672 -",
    "5 0.656250 0.667969 0.666504 0.666687 0.666664 0.666667",
    "6 0.671875 0.666016 0.666748 0.666656 0.666668 0.666667",
    "7 0.664063 0.666992 0.666626 0.666672 0.666666 0.666667",
    "8 0.667969 0.666504 0.666687 0.666664 0.666667 0.666667",
    "9 0.666016 0.666748 0.666656 0.666668 0.666667 0.666667",
    "10 0.666992 0.666626 0.666672 0.666666 0.666667 0.666667",
    "11 0.666504 0.666687 0.666664 0.666667 0.666667 0.666667",
    "12 0.666748 0.666656 0.666668 0.666667 0.666667 0.666667",
    "13 0.666626 0.666672 0.666666 0.666667 0.666667 0.666667",
    "14 0.666687 0.666664 0.666667 0.666667 0.666667 0.666667",
    "15 0.666656 0.666668 0.666667 0.666667 0.666667 0.666667",
    "16 0.666672 0.666666 0.666667 0.666667 0.666667 0.666667",
    "17 0.666664 0.666667 0.666667 0.666667 0.666667 0.666667",
    "18 0.666668 0.666667 0.666667 0.666667 0.666667 0.666667",
    "19 0.666666 0.666667 0.666667 0.666667 0.666667 0.666667",
    "20 0.666667 0.666667 0.666667 0.666667 0.666667 0.666667",
];

pub const TABLE4_Q: f64 = 0.9;
pub const TABLE4: &[&str] = &[
    "0 1.000000 - - -",
    "1 0.100000 0.527500 - -",
    "2 0.910000 0.525250 0.526319 -",
    "3 0.181000 0.527275 0.526313 0.526316",
    "4 0.837100 0.525453 0.526318 0.526316",
    "5 0.246610 0.527093 0.526314 0.526316",
    "6 0.778051 0.525617 0.526318 0.526316",
    "15 0.428788",
    "30 0.546396",
    "50 0.528757",
    "90 0.526352",
];

pub const TABLE5_Q: f64 = 1.0;
pub const TABLE5: &[&str] = &[
    "0 1.000000 - -",
    "1 0.000000 0.500000 -",
    "2 1.000000 0.500000 0.500000",
    "3 0.000000 0.500000 0.500000",
    "4 1.000000 0.500000 0.500000",
    "5 0.000000 0.500000 0.500000",
];

/// A printed cell: row `n`, column `j`, text `None` for an empty cell.
pub struct Cell {
    pub n: usize,
    pub j: usize,
    pub text: Option<&'static str>,
}

pub fn cells(table: &'static [&'static str]) -> Vec<Cell> {
    let mut out = Vec::new();
    for line in table {
        let mut it = line.split_whitespace();
        let n: usize = it.next().unwrap().parse().unwrap();
        for (j, v) in it.enumerate() {
            out.push(Cell {
                n,
                j,
                text: if v == "-" { None } else { Some(v) },
            });
        }
    }
    out
}

pub fn max_n(table: &'static [&'static str]) -> usize {
    cells(table).iter().map(|c| c.n).max().unwrap()
}

pub fn max_j(table: &'static [&'static str]) -> usize {
    cells(table).iter().map(|c| c.j).max().unwrap()
}
