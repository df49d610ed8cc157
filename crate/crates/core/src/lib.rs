pub mod classify;
pub mod exactalg;
pub mod lndlab;
pub mod suspend;
pub mod trinomial;
