"""Conic sections on the Minkowski plane."""
from .core import (Interval2, ParamLine, Point, Sign, boost, boost_exact, dist2,
                   dist2_point_line, foot_param, foot_point, metric)
from .errors import DegenerateDirectrix, DegeneratePlane, MinkConicError, NullDirectrix
from .lens import Completeness, EuclideanClass, Kind, classify, completeness, discriminant
from .quadric import AffineForm, ImplicitQuadric, evaluate, scalar_equivalent, square_affine
from .synth import (Branch, Circle, Ellipse, Hyperbola, MembershipVerdict, Parabola,
                    circle_implicit, classify_membership, ellipse_implicit,
                    hyperbola_implicit, implicit, parabola_implicit)

__version__ = "0.1.0"
