#pragma once

// Text formats. Matrices: a `ring=<tag> rows=<m> cols=<n> nnz=<k>` header
// followed by k `<i> <j> <value>` lines, 1-based, values in the ring's
// canonical text form. Entries may arrive unsorted; duplicates, zeros,
// non-canonical values, and range violations are rejected. Vectors are
// single-column matrices. Measurements carry `blocks=` and `bits=` header
// fields. Graphs: `left=<N> right=<M> d=<d>` plus one neighbor line per
// left vertex.

#include <iosfwd>
#include <string>

#include "osmm/expander.hpp"
#include "osmm/sketch.hpp"
#include "osmm/sparse.hpp"

namespace osmm {

SparseMat load_matrix(std::istream& in);
SparseMat load_matrix_file(const std::string& path);
void save_matrix(const SparseMat& m, std::ostream& out);
void save_matrix_file(const SparseMat& m, const std::string& path);

SparseVec load_vector(std::istream& in);
SparseVec load_vector_file(const std::string& path);
void save_vector(const SparseVec& v, std::ostream& out);
void save_vector_file(const SparseVec& v, const std::string& path);

Measurement load_measurement(std::istream& in);
Measurement load_measurement_file(const std::string& path);
void save_measurement(const Measurement& z, std::ostream& out);
void save_measurement_file(const Measurement& z, const std::string& path);

BipartiteGraph load_graph(std::istream& in);
BipartiteGraph load_graph_file(const std::string& path);
void save_graph(const BipartiteGraph& g, std::ostream& out);
void save_graph_file(const BipartiteGraph& g, const std::string& path);

}  // namespace osmm
