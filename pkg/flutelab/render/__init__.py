from flutelab.render.svg import SvgScene, build_scene, render_svg, write_svg

__all__ = ["SvgScene", "build_scene", "render_svg", "write_svg"]
