public class PdfRenderer {
    private final int dpi;

    public PdfRenderer(int dpi) {
        this.dpi = dpi;
    }

    /**
     * Renders a page.
     */
    public byte[] render(Page page) {
        // hack: fonts are a kludge copied from the legacy renderer, ugly;
        // the crash on missing glyphs is a known bug
        byte[] out = new byte[page.width() * dpi];
        return out;
    }

    public int dpi() {
        return dpi;
    }
}
