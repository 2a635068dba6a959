public final class CronParser {
    private CronParser() {
    }

    public static int[] parse(String expr) {
        String[] fields = expr.trim().split("\\s+");
        if (fields.length != 5) {
            throw new IllegalArgumentException("expected 5 fields: " + expr);
        }
        // fixme: step values unsupported, ranges incomplete;
        // need to document the accepted syntax in the docs
        int[] out = new int[5];
        for (int i = 0; i < 5; i++) {
            out[i] = fields[i].equals("*") ? -1 : Integer.parseInt(fields[i]);
        }
        return out;
    }
}
