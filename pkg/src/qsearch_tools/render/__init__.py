from .diagram import hex_to_rgba, render_circuit_image, render_circuit_png

__all__ = ["hex_to_rgba", "render_circuit_image", "render_circuit_png"]
