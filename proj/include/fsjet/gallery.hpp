#pragma once

#include <fsjet/jet.hpp>
#include <fsjet/linalg.hpp>
#include <fsjet/transforms.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fsjet
{

struct GalleryEntry {
    std::string name;
    std::string description;
    MappingJet jet;
    MapFn closed_form;
    std::optional<OneDimJet> onedim;
    ScalarFn factor; // set when onedim is
    CVector reference_e;
    // Psi_{reference_e}(jet, lambda, mu) as known in closed form.
    std::function<CVector(cplx, cplx)> expected_psi;
    std::string note;
};

std::vector<std::string> gallery_names();

// Jet of the named mapping at the given order, with Taylor coefficients taken
// from its closed form. Throws std::invalid_argument for unknown names.
GalleryEntry example_gallery(const std::string &name, int order = kDefaultOrder);

// (1/sqrt 2) [[1, i], [i, 1]], used by the rotated entries.
LinOp gallery_rotation();

} // namespace fsjet
