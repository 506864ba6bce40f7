//! Box diagrams for compound entropies of a two-variable joint distribution.
//!
//! Lay the outcome cells `(x, y)` along both sides of a square: the cell at
//! row `(x,y)`, column `(x′,y′)` carries weight `p(x,y)·p(x′,y′)`. Each
//! compound logical entropy is the total shaded weight when cells are shaded
//! by its distinction predicate, so the diagram is a literal picture of the
//! two-draw product measure.

use serde::Serialize;

use crate::numeric::Scalar;
use crate::{Error, Result};

use super::JointDist;

/// Which compound quantity a diagram shades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxQuantity {
    Hx,
    Hy,
    HJoint,
    HxGivenY,
    HyGivenX,
    Mxy,
}

impl BoxQuantity {
    pub const ALL: [BoxQuantity; 6] = [
        BoxQuantity::Hx,
        BoxQuantity::Hy,
        BoxQuantity::HJoint,
        BoxQuantity::HxGivenY,
        BoxQuantity::HyGivenX,
        BoxQuantity::Mxy,
    ];

    /// Distinction predicate on a pair of draws.
    fn shaded(self, a: (usize, usize), b: (usize, usize)) -> bool {
        let dx = a.0 != b.0;
        let dy = a.1 != b.1;
        match self {
            BoxQuantity::Hx => dx,
            BoxQuantity::Hy => dy,
            BoxQuantity::HJoint => dx || dy,
            BoxQuantity::HxGivenY => dx && !dy,
            BoxQuantity::HyGivenX => dy && !dx,
            BoxQuantity::Mxy => dx && dy,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoxQuantity::Hx => "h(X)",
            BoxQuantity::Hy => "h(Y)",
            BoxQuantity::HJoint => "h(X,Y)",
            BoxQuantity::HxGivenY => "h(X|Y)",
            BoxQuantity::HyGivenX => "h(Y|X)",
            BoxQuantity::Mxy => "m(X,Y)",
        }
    }
}

impl std::str::FromStr for BoxQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hx" => Ok(BoxQuantity::Hx),
            "hy" => Ok(BoxQuantity::Hy),
            "hjoint" => Ok(BoxQuantity::HJoint),
            "hx_given_y" => Ok(BoxQuantity::HxGivenY),
            "hy_given_x" => Ok(BoxQuantity::HyGivenX),
            "mxy" => Ok(BoxQuantity::Mxy),
            other => Err(Error::Parse(format!(
                "unknown quantity {other:?}; expected hx, hy, hjoint, hx_given_y, hy_given_x, or mxy"
            ))),
        }
    }
}

/// One cell of a box diagram: draw 1 indexes the row, draw 2 the column.
#[derive(Debug, Clone, Serialize)]
pub struct BoxCell {
    pub row: usize,
    pub col: usize,
    pub weight: Scalar,
    pub shaded: bool,
}

/// A rendered-ready box diagram.
#[derive(Debug, Clone, Serialize)]
pub struct BoxDiagram {
    pub quantity: BoxQuantity,
    /// Outcome labels "x,y" in row/column order.
    pub labels: Vec<String>,
    pub side: usize,
    pub cells: Vec<BoxCell>,
    pub shaded_total: Scalar,
}

/// Build the box diagram of a two-axis joint distribution for one quantity.
/// The shaded weights sum to that quantity's value.
pub fn box_diagram(j: &JointDist, quantity: BoxQuantity) -> Result<BoxDiagram> {
    if j.num_axes() != 2 {
        return Err(Error::AxisCount { expected: 2, got: j.num_axes() });
    }
    let outcomes: Vec<((usize, usize), Scalar)> = j
        .cells()
        .map(|(idx, p)| ((idx[0], idx[1]), p.clone()))
        .collect();
    let labels: Vec<String> = outcomes
        .iter()
        .map(|((x, y), _)| format!("{},{}", j.axes()[0][*x], j.axes()[1][*y]))
        .collect();
    let side = outcomes.len();
    let mut cells = Vec::with_capacity(side * side);
    let mut shaded_total = Scalar::zero();
    for (row, (a, pa)) in outcomes.iter().enumerate() {
        for (col, (b, pb)) in outcomes.iter().enumerate() {
            let weight = pa.clone() * pb.clone();
            let shaded = quantity.shaded(*a, *b);
            if shaded {
                shaded_total = shaded_total + weight.clone();
            }
            cells.push(BoxCell { row, col, weight, shaded });
        }
    }
    Ok(BoxDiagram { quantity, labels, side, cells, shaded_total })
}

impl BoxDiagram {
    pub fn shaded_count(&self) -> usize {
        self.cells.iter().filter(|c| c.shaded).count()
    }

    /// Terminal rendering: `#` shaded, `.` unshaded.
    pub fn to_ascii(&self) -> String {
        let width = self.labels.iter().map(String::len).max().unwrap_or(1).max(1);
        let mut out = String::new();
        out.push_str(&format!("{:>width$} ", "", width = width));
        for label in &self.labels {
            out.push_str(&format!(" {label:>width$}"));
        }
        out.push('\n');
        for row in 0..self.side {
            out.push_str(&format!("{:>width$} ", self.labels[row], width = width));
            for col in 0..self.side {
                let cell = &self.cells[row * self.side + col];
                out.push_str(&format!(" {:>width$}", if cell.shaded { "#" } else { "." }));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} = shaded {} of {} cells, total {}\n",
            self.quantity.name(),
            self.shaded_count(),
            self.side * self.side,
            self.shaded_total
        ));
        out
    }

    /// SVG rendering: shaded cells filled, axes labeled along top and left.
    pub fn to_svg(&self) -> String {
        const CELL: usize = 28;
        const MARGIN: usize = 70;
        let size = MARGIN + self.side * CELL + 10;
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{}\" \
             font-family=\"monospace\" font-size=\"11\">\n",
            size + 20
        ));
        svg.push_str(&format!(
            "  <title>{} box diagram</title>\n",
            self.quantity.name()
        ));
        for (i, label) in self.labels.iter().enumerate() {
            let x = MARGIN + i * CELL + CELL / 2;
            svg.push_str(&format!(
                "  <text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{label}</text>\n",
                MARGIN - 8
            ));
            let y = MARGIN + i * CELL + CELL / 2 + 4;
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{y}\" text-anchor=\"end\">{label}</text>\n",
                MARGIN - 8
            ));
        }
        for cell in &self.cells {
            let x = MARGIN + cell.col * CELL;
            let y = MARGIN + cell.row * CELL;
            let fill = if cell.shaded { "#4477aa" } else { "#ffffff" };
            svg.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
                 fill=\"{fill}\" stroke=\"#222222\"/>\n"
            ));
        }
        svg.push_str(&format!(
            "  <text x=\"{MARGIN}\" y=\"{}\">{} = {} ({} of {} cells shaded)</text>\n",
            MARGIN + self.side * CELL + 16,
            self.quantity.name(),
            self.shaded_total,
            self.shaded_count(),
            self.side * self.side,
        ));
        svg.push_str("</svg>\n");
        svg
    }
}
