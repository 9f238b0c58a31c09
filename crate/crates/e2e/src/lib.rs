//! Holds the `acceptance` test target, which runs last so that a failing
//! criterion does not hide the results of the other suites.
