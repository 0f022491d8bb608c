//! Lower-bound formulas, composition, and the consolidated bounds table.

mod formulas;
mod ratios;
mod reference;
mod registry;
mod table;

pub use formulas::{
    blankenship_inner_colors, bound_blankenship, bound_rabung, bound_zip, bound_zip_twice,
    formula_berlekamp, formula_blankenship_power, formula_landman_robertson, formula_szabo,
};
pub use ratios::growth_ratios;
pub use reference::{known_exact, reference_table, KNOWN_EXACT};
pub use registry::{BoundFormula, FormulaRegistry, FormulaValue};
pub use table::{group_digits, BoundRecord, BoundStatus, BoundsTable, TSV_HEADER};
