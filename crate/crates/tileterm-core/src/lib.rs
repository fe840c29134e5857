pub mod graph;
pub mod pbpo;
pub mod termination;
pub mod corpus;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../book/src/method.md")]
    mod method {}
    #[doc = include_str!("../../../book/src/repl.md")]
    mod repl {}
    #[doc = include_str!("../../../book/src/batch.md")]
    mod batch {}
    #[doc = include_str!("../../../book/src/api.md")]
    mod api {}
    #[doc = include_str!("../../../book/src/library.md")]
    mod library {}
}
