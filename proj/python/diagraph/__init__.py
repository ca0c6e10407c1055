# Copyright 2026 The Diagraph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python access to the diagraph core: parsing, validation, agreement, features."""

from ._diagraph import (  # noqa: F401
    Diagram,
    DiagraphError,
    Layout,
    classwise_kappa,
    feature_dimensions,
    fleiss_kappa,
    mace,
    parse_annotation,
    parse_layout,
    pca,
    randolph_kappa,
    sample_size,
    skeleton,
    zscore,
)

__version__ = "0.1.0"


def load(annotation_text, layout_text, check=True):
    """Parses a layout and its annotation document in one call."""
    return parse_annotation(annotation_text, parse_layout(layout_text), check)
