import logging
from typing import List, Optional, Sequence, Tuple

from engines.algebra_engines import build_truncated
from engines.etale_engines import AlgebraMorphism, CentralExtension, EtaleDiagram, FamilyFactor
from engines.ncpoly_engines import NcPoly
from engines.parser_engines import parse_poly, parse_presentation
from exceptions import DataValidationException
from schemas.diagram_schemas import AlgebroidIn, AlphaIn, DiagramIn, FamilyIn, PolyIn
from schemas.presentation_schemas import BracketEntry, LieAlgebroidPresentation, Presentation

logger = logging.getLogger(__name__)


class DiagramEngine:
    """Turns validated input files into presentations, morphisms and diagrams."""

    @classmethod
    def poly(cls, value: PolyIn, names: Sequence[str]) -> NcPoly:
        if isinstance(value, str):
            return parse_poly(value, names)
        poly = NcPoly.from_terms(term.model_dump() for term in value)
        if any(letter >= len(names) for letter in poly.generators_used()):
            raise DataValidationException(f"Term list {value} refers to generators beyond {list(names)}")
        return poly

    @classmethod
    def polys(cls, values: Sequence[PolyIn], names: Sequence[str]) -> List[NcPoly]:
        return [cls.poly(value, names) for value in values]

    @classmethod
    def build_diagram(cls, diagram_in: DiagramIn, default_bound: int) -> EtaleDiagram:
        source = parse_presentation(diagram_in.R, default_bound)
        etale = parse_presentation(diagram_in.S, default_bound)
        total_pres = parse_presentation(diagram_in.Aprime, default_bound)
        target_pres = parse_presentation(diagram_in.A, default_bound)

        etale_alg = build_truncated(etale)
        target = build_truncated(target_pres)
        total = build_truncated(total_pres)
        maps = diagram_in.maps
        alpha = AlgebraMorphism.from_polys(source, etale_alg, cls.polys(maps.alpha, etale.names))
        beta = AlgebraMorphism.from_polys(etale, target, cls.polys(maps.beta, target_pres.names))
        gamma = AlgebraMorphism.from_polys(total_pres, target, cls.polys(maps.gamma, target_pres.names))
        delta = AlgebraMorphism.from_polys(source, total, cls.polys(maps.delta, total_pres.names))
        extension = CentralExtension.from_morphism(total, gamma)

        preimages = {}
        if diagram_in.x is not None and diagram_in.y is not None:
            z_index, u_index = len(etale.generators) - 2, len(etale.generators) - 1
            preimages[z_index] = total.vector_of(cls.poly(diagram_in.x, total_pres.names), strict=False)
            preimages[u_index] = total.vector_of(cls.poly(diagram_in.y, total_pres.names), strict=False)
        coefficients = None
        if diagram_in.a is not None:
            coefficients = tuple(cls.polys(diagram_in.a, source.names))
        logger.info(
            f"Loaded diagram {diagram_in.label or etale.name}: dim A' = {total.dim}, dim A = {target.dim}"
        )
        return EtaleDiagram(
            alpha=alpha,
            beta=beta,
            delta=delta,
            extension=extension,
            preimages=preimages,
            coefficients=coefficients,
            label=diagram_in.label,
        )

    @classmethod
    def build_alpha(
        cls, alpha_in: AlphaIn, default_bound: int
    ) -> Tuple[AlgebraMorphism, Optional[Tuple[NcPoly, ...]]]:
        source = parse_presentation(alpha_in.R, default_bound)
        etale = parse_presentation(alpha_in.S, default_bound)
        alpha = AlgebraMorphism.from_polys(
            source, build_truncated(etale), cls.polys(alpha_in.alpha, etale.names)
        )
        coefficients = None
        if alpha_in.a is not None:
            coefficients = tuple(cls.polys(alpha_in.a, source.names))
        return alpha, coefficients

    @classmethod
    def build_factors(
        cls, family_in: FamilyIn, source: Presentation, default_bound: int
    ) -> List[FamilyFactor]:
        factors = []
        for factor_in in family_in.factors:
            pres = parse_presentation(factor_in.A, default_bound)
            algebra = build_truncated(pres)
            if len(factor_in.base_images) != len(source.generators):
                raise DataValidationException(
                    f"Factor {pres.name} gives {len(factor_in.base_images)} images for "
                    f"{len(source.generators)} generators of {source.name}"
                )
            images = tuple(
                algebra.vector_of(poly, strict=False) for poly in cls.polys(factor_in.base_images, pres.names)
            )
            factors.append(FamilyFactor(algebra=algebra, base_images=images, point=dict(factor_in.point)))
        return factors

    @classmethod
    def build_algebroid(cls, algebroid_in: AlgebroidIn, default_bound: int) -> LieAlgebroidPresentation:
        base = parse_presentation(algebroid_in.base, default_bound)
        names = base.names
        anchor = tuple(tuple(cls.polys(images, names)) for images in algebroid_in.anchor)
        brackets = tuple(
            BracketEntry(
                left=entry.left,
                right=entry.right,
                coefficients={k: cls.poly(c, names) for k, c in entry.coefficients.items()},
                scalar=cls.poly(entry.scalar, names),
            )
            for entry in algebroid_in.brackets
        )
        return LieAlgebroidPresentation(
            base=base,
            generators=tuple(algebroid_in.generators),
            anchor=anchor,
            brackets=brackets,
            degree_bound=algebroid_in.bound,
        )
