use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter polynomial degree {0} exceeds the cap of {cap}", cap = crate::poly::DEGREE_CAP)]
    DegreeOverflow(u32),
    #[error("differential order {0} exceeds the cap of {cap}", cap = crate::diffop::ORDER_CAP)]
    OrderOverflow(u32),
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("expected a constant coefficient, found {0}")]
    NotConstant(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operator has no definite grading")]
    IndefiniteGrading,
    #[error("exponent {0} falls off the lattice of its component")]
    Lattice(String),
    #[error("gamma function pole at {0}")]
    GammaPole(String),
    #[error("construction fault: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
