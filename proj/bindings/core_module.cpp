// Placeholder; bindings are added once the toolkit API lands.
#include <pybind11/pybind11.h>

namespace py = pybind11;

PYBIND11_MODULE(_core, m) { m.doc() = "parallel shortest paths toolkit"; }
