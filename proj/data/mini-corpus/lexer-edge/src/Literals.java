public class Literals {
    private static final String OPEN = "{";
    private static final char CLOSE = '}';
    private static final String TRICKY = "/* not a comment */ // nor this }";

    public String braces() {
        String s = "}}}{{{";
        char c = '{';
        // keeps the literal braces out of the brace count
        return s + c + OPEN + CLOSE;
    }

    public String escaped() {
        String quote = "she said \"}\" and left";
        char q = '\'';
        return quote + q; /* trailing block comment */
    }

    public String textBlock() {
        String html = """
            <div class="a">{ }</div>
            // not a comment either
            """;
        return html;
    }

    public int slashes(int a, int b) {
        return a / b / 2; // plain division
    }
}
